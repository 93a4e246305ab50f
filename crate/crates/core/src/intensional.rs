//! Intensional semantics: formulas denote interned concepts, and each world
//! turns concepts into relations through its extensionalization function.
//!
//! ```
//! use foli::fixtures::m1;
//! use foli::intensional::{extensionalize, intend, is};
//! use foli::parse_formula;
//!
//! let m = m1();
//! let phi = parse_formula("p(x) & q(x,y)", m.signature()).unwrap();
//! let u = intend(&phi);
//! assert_eq!(u.arity(), 2);
//! assert_eq!(u.to_string(), "conj{(1,1)}(atom(p(v1)), atom(q(v1,v2)))");
//! let h = is(&m);
//! assert_eq!(extensionalize(&h, u).unwrap().render_set(m.domain()), "{(a,b)}");
//! ```

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{OnceLock, RwLock};

use thiserror::Error;

use crate::relalg::{self, Element, JoinSpec, RelError, Relation};
use crate::syntax::{canonical_atom_key, free_var_tuple, ground, substitute, AtomKey, Formula, Term, VarTuple};
use crate::tarski::{self, join_spec_for, Assignment, EvalError, Interpretation};
use crate::worlds::WorldSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntensionalError {
    #[error("atom `{0}` is not over the interpretation's signature")]
    UnknownAtom(String),
    #[error("`{0}` is a particular, not a relation")]
    Particular(String),
    #[error("free variable tuples differ: {0} vs {1}")]
    TupleMismatch(String, String),
    #[error("position {position} out of range for {arity} free variables")]
    PositionOutOfRange { position: usize, arity: usize },
    #[error("`{0}` is not a declared constant")]
    UnknownConstant(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Relation(#[from] RelError),
}

/// Structure of a concept. Children are concepts of the same store.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ConceptNode {
    /// A domain element, by name.
    Particular(String),
    Atom(AtomKey),
    Id,
    Truth,
    Conj(Concept, Concept, JoinSpec),
    Neg(Concept),
    /// `exists_n`; `n = 0` is the identity.
    Exists(Concept, usize),
}

/// An interned concept. Two concepts are equal iff their structure is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Concept {
    id: u32,
    arity: i32,
}

impl Concept {
    /// `-1` for particulars, `0` for propositions, `k` for k-ary concepts.
    pub fn arity(&self) -> i32 {
        self.arity
    }

    pub fn id(&self) -> u32 {
        self.id
    }

    pub fn node(&self) -> ConceptNode {
        store().node(*self)
    }

    pub fn truth() -> Concept {
        store().intern(ConceptNode::Truth, 0)
    }

    pub fn identity() -> Concept {
        store().intern(ConceptNode::Id, 2)
    }

    pub fn particular(element: &str) -> Concept {
        store().intern(ConceptNode::Particular(element.to_string()), -1)
    }

    pub fn atom(key: AtomKey) -> Concept {
        let k = key.arity() as i32;
        store().intern(ConceptNode::Atom(key), k)
    }

    /// `conj_S(u, v)`, of arity `k + j - |S|` when `S` fits, otherwise `k + j`.
    pub fn conj(u: Concept, v: Concept, spec: JoinSpec) -> Concept {
        let (k, j) = (u.arity.max(0) as usize, v.arity.max(0) as usize);
        let arity = if spec.fits(k, j) { k + j - spec.len() } else { k + j };
        store().intern(ConceptNode::Conj(u, v, spec), arity as i32)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(u: Concept) -> Concept {
        store().intern(ConceptNode::Neg(u), u.arity)
    }

    pub fn exists(u: Concept, n: usize) -> Concept {
        let arity = if n >= 1 && n as i32 <= u.arity { u.arity - 1 } else { u.arity };
        store().intern(ConceptNode::Exists(u, n), arity)
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            ConceptNode::Particular(e) => write!(f, "@{e}"),
            ConceptNode::Atom(key) => write!(f, "atom({key})"),
            ConceptNode::Id => f.write_str("id"),
            ConceptNode::Truth => f.write_str("truth"),
            ConceptNode::Conj(u, v, s) => write!(f, "conj{s}({u}, {v})"),
            ConceptNode::Neg(u) => write!(f, "neg({u})"),
            ConceptNode::Exists(u, n) => write!(f, "exists_{n}({u})"),
        }
    }
}

#[derive(Default)]
struct Interner {
    nodes: Vec<ConceptNode>,
    arities: Vec<i32>,
    index: HashMap<ConceptNode, u32>,
}

/// Append-only intern table shared by every concept.
pub struct ConceptStore {
    inner: RwLock<Interner>,
}

fn store() -> &'static ConceptStore {
    static STORE: OnceLock<ConceptStore> = OnceLock::new();
    STORE.get_or_init(|| ConceptStore {
        inner: RwLock::new(Interner::default()),
    })
}

impl ConceptStore {
    fn intern(&self, node: ConceptNode, arity: i32) -> Concept {
        if let Some(&id) = self.inner.read().expect("store lock").index.get(&node) {
            return Concept { id, arity };
        }
        let mut t = self.inner.write().expect("store lock");
        if let Some(&id) = t.index.get(&node) {
            return Concept { id, arity };
        }
        let id = u32::try_from(t.nodes.len()).expect("fewer than 2^32 concepts");
        t.nodes.push(node.clone());
        t.arities.push(arity);
        t.index.insert(node, id);
        Concept { id, arity }
    }

    fn node(&self, c: Concept) -> ConceptNode {
        self.inner.read().expect("store lock").nodes[c.id as usize].clone()
    }
}

/// Number of concepts interned so far.
pub fn interned_count() -> usize {
    store().inner.read().expect("store lock").nodes.len()
}

/// The intensional interpretation `I`: a homomorphism from formulas into the
/// free concept algebra over atomic concepts.
pub fn intend(phi: &Formula) -> Concept {
    match phi {
        Formula::True => Concept::truth(),
        Formula::Eq(Term::Var(x), Term::Var(y)) if x != y => Concept::identity(),
        Formula::Atom(..) | Formula::Eq(..) => Concept::atom(canonical_atom_key(phi).expect("atomic")),
        Formula::And(l, r) => {
            let spec = join_spec_for(&free_var_tuple(l), &free_var_tuple(r));
            Concept::conj(intend(l), intend(r), spec)
        }
        Formula::Not(f) => Concept::neg(intend(f)),
        Formula::Exists(x, body) => {
            let n = free_var_tuple(body).position(x).unwrap_or(0);
            Concept::exists(intend(body), n)
        }
    }
}

/// An extensionalization function `h`, fixed by one interpretation.
pub struct Extensionalization<'a> {
    interp: &'a Interpretation,
    memo: RefCell<HashMap<Concept, Relation>>,
}

/// `is(w)`: the extensionalization function of world `w`.
pub fn is(w: &Interpretation) -> Extensionalization<'_> {
    Extensionalization {
        interp: w,
        memo: RefCell::new(HashMap::new()),
    }
}

impl<'a> Extensionalization<'a> {
    pub fn interpretation(&self) -> &'a Interpretation {
        self.interp
    }

    /// `h` on particulars is the identity.
    pub fn particular(&self, u: Concept) -> Result<Element, IntensionalError> {
        match u.node() {
            ConceptNode::Particular(e) => self
                .interp
                .domain()
                .index(&e)
                .ok_or(IntensionalError::Eval(EvalError::UnknownElement(e))),
            _ => Err(IntensionalError::Particular(u.to_string())),
        }
    }

    fn eval(&self, u: Concept) -> Result<Relation, IntensionalError> {
        if let Some(r) = self.memo.borrow().get(&u) {
            return Ok(r.clone());
        }
        let d = self.interp.domain();
        let r = match u.node() {
            ConceptNode::Particular(e) => return Err(IntensionalError::Particular(e)),
            ConceptNode::Atom(key) => tarski::extension(self.interp, &key.to_formula()).map_err(|e| match e {
                EvalError::UnknownPredicate(_) | EvalError::UnknownFunction(_) | EvalError::ArityMismatch { .. } => {
                    IntensionalError::UnknownAtom(key.to_string())
                }
                other => other.into(),
            })?,
            ConceptNode::Id => relalg::identity_relation(d),
            ConceptNode::Truth => Relation::truth(),
            ConceptNode::Conj(l, r, s) => relalg::natural_join(&self.eval(l)?, &self.eval(r)?, &s)?,
            ConceptNode::Neg(l) => relalg::complement(&self.eval(l)?, d)?,
            ConceptNode::Exists(l, n) => relalg::project_out(&self.eval(l)?, n),
        };
        self.memo.borrow_mut().insert(u, r.clone());
        Ok(r)
    }
}

pub fn extensionalize(h: &Extensionalization<'_>, u: Concept) -> Result<Relation, IntensionalError> {
    h.eval(u)
}

/// Both routes from a formula to its extension in `m`: through the concept
/// algebra, and directly.
pub fn diagram_values(phi: &Formula, m: &Interpretation) -> Result<(Relation, Relation), IntensionalError> {
    let via_concepts = extensionalize(&is(m), intend(phi))?;
    let direct = tarski::extension(m, phi)?;
    Ok((via_concepts, direct))
}

/// Whether `h(I(phi)) = I_T*(phi)` in `m`, arity included.
pub fn verify_diagram(phi: &Formula, m: &Interpretation) -> Result<bool, IntensionalError> {
    let (a, b) = diagram_values(phi, m)?;
    Ok(a == b)
}

/// The Montague intension: world index to extension.
pub fn intension(phi: &Formula, worlds: &WorldSet) -> Result<BTreeMap<u64, Relation>, IntensionalError> {
    worlds
        .iter()
        .map(|w| Ok((w.index(), tarski::extension(w.interpretation(), phi)?)))
        .collect()
}

fn same_tuple(phi: &Formula, psi: &Formula) -> Result<VarTuple, IntensionalError> {
    let (a, b) = (free_var_tuple(phi), free_var_tuple(psi));
    if a != b {
        return Err(IntensionalError::TupleMismatch(a.to_string(), b.to_string()));
    }
    Ok(a)
}

/// Equal extensions at every world.
pub fn intensionally_equal(phi: &Formula, psi: &Formula, worlds: &WorldSet) -> Result<bool, IntensionalError> {
    same_tuple(phi, psi)?;
    for w in worlds {
        let m = w.interpretation();
        if tarski::extension(m, phi)? != tarski::extension(m, psi)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The constant value of the intension of `◇phi`: the union of the
/// extensions of `phi` over all worlds.
pub fn diamond_intension(phi: &Formula, worlds: &WorldSet) -> Result<Relation, IntensionalError> {
    let mut acc = Relation::empty(free_var_tuple(phi).len());
    for w in worlds {
        acc = acc.union(&tarski::extension(w.interpretation(), phi)?)?;
    }
    Ok(acc)
}

/// Equal `◇`-intensions.
pub fn intensionally_equivalent(phi: &Formula, psi: &Formula, worlds: &WorldSet) -> Result<bool, IntensionalError> {
    same_tuple(phi, psi)?;
    Ok(diamond_intension(phi, worlds)? == diamond_intension(psi, worlds)?)
}

/// Both sides of the substitution law for `phi[x_i/c]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubconceptCheck {
    /// `h(I(phi[x_i/c]))`.
    pub left: Relation,
    /// The filtered and projected (or truth-lifted) `h(I(phi))`.
    pub right: Relation,
}

impl SubconceptCheck {
    pub fn holds(&self) -> bool {
        self.left == self.right
    }
}

/// Compare `h(I(phi[x_i/c]))` with the column-`i` selection of `h(I(phi))` at
/// `I(c)`, projected out. `i` is 1-based into the free variable tuple.
pub fn subconcept_extension(phi: &Formula, i: usize, c: &str, m: &Interpretation) -> Result<SubconceptCheck, IntensionalError> {
    let vars = free_var_tuple(phi);
    let n = vars.len();
    if i == 0 || i > n {
        return Err(IntensionalError::PositionOutOfRange { position: i, arity: n });
    }
    if m.signature().function_arity(c) != Some(0) {
        return Err(IntensionalError::UnknownConstant(c.to_string()));
    }
    let h = is(m);
    let x = &vars.as_slice()[i - 1];
    let instance = substitute(phi, x, &Term::constant(c)).expect("constants cannot be captured");
    let left = extensionalize(&h, intend(&instance))?;
    let value = tarski::eval_term(&Term::constant(c), m, &Assignment::new())?;
    let selected = extensionalize(&h, intend(phi))?.filter(|t| t[i - 1] == value);
    let right = if n >= 2 {
        relalg::project_out(&selected, i)
    } else {
        relalg::truth_lift(&selected)
    };
    Ok(SubconceptCheck { left, right })
}

/// The sentence clause: `h(I(phi/g)) = t` iff `(g(x_1),...,g(x_n)) ∈ h(I(phi))`.
/// Returns whether the two sides agree.
pub fn sentence_clause(phi: &Formula, g: &Assignment, m: &Interpretation) -> Result<bool, IntensionalError> {
    let vars = free_var_tuple(phi);
    let tuple = vars
        .iter()
        .map(|x| g.get(x).ok_or_else(|| EvalError::UnassignedVariable(x.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let names = g.to_names(m.domain());
    let sentence = ground(phi, &names).map_err(|e| IntensionalError::Eval(EvalError::UnassignedVariable(e.to_string())))?;
    let h = is(m);
    let lhs = extensionalize(&h, intend(&sentence))?.is_truth();
    let rhs = extensionalize(&h, intend(phi))?.contains(&tuple);
    Ok(lhs == rhs)
}
