//! Kripke semantics.
//!
//! Three evaluators live here:
//!
//! * [`satisfies_generalized`]: multi-modal predicate semantics over an
//!   explicit frame with one interpretation table per world. With only
//!   nullary predicates it is ordinary propositional modal logic.
//! * [`satisfies_k`]: first-order logic read modally. Worlds are the
//!   assignments `D^V`, `exists x` is a diamond over the relation `R_x` that
//!   relates assignments differing at most on `x`, and every table is rigid.
//! * [`EnrichedModel::satisfies`]: the intensional enrichment, whose worlds
//!   pair a whole inner model with one of its explicit worlds and which adds
//!   diamonds ranging over the inner models.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::relalg::{Domain, Element, Relation, Tuple};
use crate::syntax::{free_var_tuple, ground, Formula, Signature, Term, VarTuple};
use crate::tarski::{self, Assignment, EvalError, Interpretation};
use crate::worlds::WorldSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KripkeError {
    #[error("modality `{0}` is not declared")]
    UndeclaredModality(String),
    #[error("variable `{0}` is not in V")]
    VariableOutsideV(String),
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("world index {0} out of range")]
    WorldOutOfRange(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// A first-order formula with named diamonds.
///
/// `Diamond` ranges over the explicit worlds of a frame; `IntDiamond` over
/// the inner models of an [`EnrichedModel`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ModalFormula {
    True,
    Atom(String, Vec<Term>),
    Eq(Term, Term),
    And(Box<ModalFormula>, Box<ModalFormula>),
    Not(Box<ModalFormula>),
    Exists(String, Box<ModalFormula>),
    Diamond(String, Box<ModalFormula>),
    IntDiamond(String, Box<ModalFormula>),
}

impl ModalFormula {
    pub fn and(l: ModalFormula, r: ModalFormula) -> Self {
        ModalFormula::And(Box::new(l), Box::new(r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: ModalFormula) -> Self {
        ModalFormula::Not(Box::new(f))
    }

    pub fn exists(x: &str, f: ModalFormula) -> Self {
        ModalFormula::Exists(x.to_string(), Box::new(f))
    }

    pub fn forall(x: &str, f: ModalFormula) -> Self {
        Self::not(Self::exists(x, Self::not(f)))
    }

    pub fn or(l: ModalFormula, r: ModalFormula) -> Self {
        Self::not(Self::and(Self::not(l), Self::not(r)))
    }

    pub fn implies(l: ModalFormula, r: ModalFormula) -> Self {
        Self::not(Self::and(l, Self::not(r)))
    }

    pub fn iff(l: ModalFormula, r: ModalFormula) -> Self {
        Self::and(Self::implies(l.clone(), r.clone()), Self::implies(r, l))
    }

    pub fn diamond(name: &str, f: ModalFormula) -> Self {
        ModalFormula::Diamond(name.to_string(), Box::new(f))
    }

    /// `[name] f` as `~<name>~f`.
    pub fn boxed(name: &str, f: ModalFormula) -> Self {
        Self::not(Self::diamond(name, Self::not(f)))
    }

    pub fn int_diamond(name: &str, f: ModalFormula) -> Self {
        ModalFormula::IntDiamond(name.to_string(), Box::new(f))
    }

    pub fn int_boxed(name: &str, f: ModalFormula) -> Self {
        Self::not(Self::int_diamond(name, Self::not(f)))
    }

    /// The plain formula, if no modal operator occurs.
    pub fn to_formula(&self) -> Option<Formula> {
        Some(match self {
            ModalFormula::True => Formula::True,
            ModalFormula::Atom(p, args) => Formula::Atom(p.clone(), args.clone()),
            ModalFormula::Eq(l, r) => Formula::Eq(l.clone(), r.clone()),
            ModalFormula::And(l, r) => Formula::and(l.to_formula()?, r.to_formula()?),
            ModalFormula::Not(f) => Formula::not(f.to_formula()?),
            ModalFormula::Exists(x, f) => Formula::exists(x, f.to_formula()?),
            ModalFormula::Diamond(..) | ModalFormula::IntDiamond(..) => return None,
        })
    }

    pub fn has_int_diamond(&self) -> bool {
        match self {
            ModalFormula::True | ModalFormula::Atom(..) | ModalFormula::Eq(..) => false,
            ModalFormula::And(l, r) => l.has_int_diamond() || r.has_int_diamond(),
            ModalFormula::Not(f) | ModalFormula::Exists(_, f) | ModalFormula::Diamond(_, f) => f.has_int_diamond(),
            ModalFormula::IntDiamond(..) => true,
        }
    }

    /// Free variables by leftmost free occurrence; modalities bind nothing.
    pub fn free_var_tuple(&self) -> VarTuple {
        fn walk<'a>(f: &'a ModalFormula, bound: &mut Vec<&'a str>, out: &mut Vec<String>) {
            let term = |t: &'a Term, bound: &Vec<&'a str>, out: &mut Vec<String>| {
                let mut vs = Vec::new();
                t.collect_vars(&mut vs);
                for v in vs {
                    if !bound.contains(&v) && !out.iter().any(|o| o == v) {
                        out.push(v.to_string());
                    }
                }
            };
            match f {
                ModalFormula::True => {}
                ModalFormula::Atom(_, args) => args.iter().for_each(|t| term(t, bound, out)),
                ModalFormula::Eq(l, r) => {
                    term(l, bound, out);
                    term(r, bound, out);
                }
                ModalFormula::And(l, r) => {
                    walk(l, bound, out);
                    walk(r, bound, out);
                }
                ModalFormula::Not(f) | ModalFormula::Diamond(_, f) | ModalFormula::IntDiamond(_, f) => walk(f, bound, out),
                ModalFormula::Exists(x, f) => {
                    bound.push(x);
                    walk(f, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        VarTuple::new(out)
    }

    fn fmt_unary(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModalFormula::And(..) | ModalFormula::Exists(..) | ModalFormula::Eq(..) => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }
}

impl From<&Formula> for ModalFormula {
    fn from(f: &Formula) -> Self {
        match f {
            Formula::True => ModalFormula::True,
            Formula::Atom(p, args) => ModalFormula::Atom(p.clone(), args.clone()),
            Formula::Eq(l, r) => ModalFormula::Eq(l.clone(), r.clone()),
            Formula::And(l, r) => ModalFormula::and(l.as_ref().into(), r.as_ref().into()),
            Formula::Not(inner) => ModalFormula::not(inner.as_ref().into()),
            Formula::Exists(x, body) => ModalFormula::exists(x, body.as_ref().into()),
        }
    }
}

impl From<Formula> for ModalFormula {
    fn from(f: Formula) -> Self {
        (&f).into()
    }
}

impl fmt::Display for ModalFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModalFormula::True | ModalFormula::Atom(..) | ModalFormula::Eq(..) => {
                write!(f, "{}", self.to_formula().expect("atomic"))
            }
            ModalFormula::And(l, r) => {
                match **l {
                    ModalFormula::Exists(..) => write!(f, "({l})")?,
                    _ => write!(f, "{l}")?,
                }
                f.write_str(" & ")?;
                match **r {
                    ModalFormula::And(..) | ModalFormula::Exists(..) => write!(f, "({r})"),
                    _ => write!(f, "{r}"),
                }
            }
            ModalFormula::Not(inner) => {
                f.write_str("~")?;
                inner.fmt_unary(f)
            }
            ModalFormula::Diamond(name, inner) => {
                write!(f, "<{name}>")?;
                inner.fmt_unary(f)
            }
            ModalFormula::IntDiamond(name, inner) => {
                write!(f, "<^{name}>")?;
                inner.fmt_unary(f)
            }
            ModalFormula::Exists(x, body) => {
                write!(f, "exists {x}. ")?;
                match **body {
                    ModalFormula::And(..) => write!(f, "({body})"),
                    _ => write!(f, "{body}"),
                }
            }
        }
    }
}

/// Named explicit worlds with named accessibility relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeFrame {
    worlds: Vec<String>,
    relations: BTreeMap<String, BTreeSet<(usize, usize)>>,
}

impl KripkeFrame {
    pub fn new(worlds: Vec<String>) -> Self {
        KripkeFrame {
            worlds,
            relations: BTreeMap::new(),
        }
    }

    pub fn from_names(
        worlds: Vec<String>,
        relations: &BTreeMap<String, Vec<(String, String)>>,
    ) -> Result<Self, KripkeError> {
        let mut frame = KripkeFrame::new(worlds);
        for (name, pairs) in relations {
            let mut idx = BTreeSet::new();
            for (a, b) in pairs {
                idx.insert((frame.world_index(a)?, frame.world_index(b)?));
            }
            frame.relations.insert(name.clone(), idx);
        }
        Ok(frame)
    }

    pub fn with_relation(mut self, name: &str, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, KripkeError> {
        let pairs: BTreeSet<_> = pairs.into_iter().collect();
        if let Some(&(a, b)) = pairs.iter().find(|(a, b)| *a >= self.worlds.len() || *b >= self.worlds.len()) {
            return Err(KripkeError::WorldOutOfRange(a.max(b)));
        }
        self.relations.insert(name.to_string(), pairs);
        Ok(self)
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn world_index(&self, name: &str) -> Result<usize, KripkeError> {
        self.worlds
            .iter()
            .position(|w| w == name)
            .ok_or_else(|| KripkeError::UnknownWorld(name.to_string()))
    }

    pub fn relation(&self, name: &str) -> Result<&BTreeSet<(usize, usize)>, KripkeError> {
        self.relations
            .get(name)
            .ok_or_else(|| KripkeError::UndeclaredModality(name.to_string()))
    }

    pub fn relation_names(&self) -> impl Iterator<Item = &str> {
        self.relations.keys().map(String::as_str)
    }

    fn successors<'a>(&'a self, name: &str, w: usize) -> Result<impl Iterator<Item = usize> + 'a, KripkeError> {
        let rel = self.relation(name)?;
        Ok(rel.range((w, 0)..=(w, usize::MAX)).map(|&(_, b)| b))
    }
}

/// Whether `tables` assigns the same predicate and function tables at every
/// world.
pub fn is_rigid(tables: &[Interpretation]) -> bool {
    tables.windows(2).all(|w| {
        w[0].predicates() == w[1].predicates() && w[0].functions() == w[1].functions()
    })
}

/// Multi-modal predicate satisfaction at explicit world `w` under `g`.
pub fn satisfies_generalized(
    frame: &KripkeFrame,
    tables: &[Interpretation],
    w: usize,
    g: &Assignment,
    phi: &ModalFormula,
) -> Result<bool, KripkeError> {
    let m = tables.get(w).ok_or(KripkeError::WorldOutOfRange(w))?;
    Ok(match phi {
        ModalFormula::True => true,
        ModalFormula::Atom(p, args) => tarski::atom_holds(m, g, p, args)?,
        ModalFormula::Eq(l, r) => tarski::eval_term(l, m, g)? == tarski::eval_term(r, m, g)?,
        ModalFormula::And(l, r) => {
            satisfies_generalized(frame, tables, w, g, l)? && satisfies_generalized(frame, tables, w, g, r)?
        }
        ModalFormula::Not(f) => !satisfies_generalized(frame, tables, w, g, f)?,
        ModalFormula::Exists(x, f) => {
            let mut g = g.clone();
            for d in m.domain().elements() {
                g.set(x, d);
                if satisfies_generalized(frame, tables, w, &g, f)? {
                    return Ok(true);
                }
            }
            false
        }
        ModalFormula::Diamond(name, f) => {
            for v in frame.successors(name, w)? {
                if satisfies_generalized(frame, tables, v, g, f)? {
                    return Ok(true);
                }
            }
            false
        }
        ModalFormula::IntDiamond(name, _) => return Err(KripkeError::UndeclaredModality(format!("^{name}"))),
    })
}

/// First-order logic as a rigid S5 multi-modal model whose worlds are the
/// assignments `D^V` over a finite variable set `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FolkModel {
    vars: Vec<String>,
    base: Interpretation,
}

/// A world of a [`FolkModel`]: values of the variables of `V`, in `V`'s
/// sorted order.
pub type AssignmentWorld = Tuple;

/// `♭`: the modal model of `m` over the variables `vars`.
pub fn flat<I, S>(m: &Interpretation, vars: I) -> FolkModel
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let vars: BTreeSet<String> = vars.into_iter().map(Into::into).collect();
    FolkModel {
        vars: vars.into_iter().collect(),
        base: m.clone(),
    }
}

impl FolkModel {
    /// The Tarski interpretation this model was built from.
    pub fn flat_inverse(&self) -> &Interpretation {
        &self.base
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn domain(&self) -> &Domain {
        self.base.domain()
    }

    /// The tables at world `w`. Every world shares the same tables.
    pub fn tables_at(&self, _w: &[Element]) -> &Interpretation {
        &self.base
    }

    /// `D^V` in lexicographic order.
    pub fn worlds(&self) -> impl Iterator<Item = AssignmentWorld> {
        self.base.domain().tuples(self.vars.len())
    }

    pub fn world_count(&self) -> u128 {
        self.base.domain().tuple_count(self.vars.len())
    }

    pub fn world_assignment(&self, w: &[Element]) -> Assignment {
        Assignment::from_tuple(self.vars.iter().map(String::as_str), w)
    }

    fn var_index(&self, x: &str) -> Result<usize, KripkeError> {
        self.vars
            .binary_search_by(|v| v.as_str().cmp(x))
            .map_err(|_| KripkeError::VariableOutsideV(x.to_string()))
    }

    /// `R_x` as pairs of world indices (positions in [`FolkModel::worlds`]).
    pub fn accessibility(&self, x: &str) -> Result<BTreeSet<(usize, usize)>, KripkeError> {
        let i = self.var_index(x)?;
        let worlds: Vec<AssignmentWorld> = self.worlds().collect();
        let mut out = BTreeSet::new();
        for (a, w1) in worlds.iter().enumerate() {
            for (b, w2) in worlds.iter().enumerate() {
                let same_elsewhere = w1.iter().zip(w2).enumerate().all(|(j, (u, v))| j == i || u == v);
                if same_elsewhere {
                    out.insert((a, b));
                }
            }
        }
        Ok(out)
    }

    fn eval_term(&self, t: &Term, w: &[Element]) -> Result<Element, KripkeError> {
        match t {
            Term::Var(x) => Ok(w[self.var_index(x)?]),
            Term::Elem(e) => self
                .domain()
                .index(e)
                .ok_or_else(|| EvalError::UnknownElement(e.clone()).into()),
            Term::App(f, args) => {
                let table = self
                    .base
                    .function(f)
                    .ok_or_else(|| EvalError::UnknownFunction(f.clone()))?;
                let vals = args
                    .iter()
                    .map(|a| self.eval_term(a, w))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(table.apply(&vals, self.domain().len()))
            }
        }
    }
}

/// Satisfaction at assignment-world `w`. `exists x` looks at every world
/// `R_x`-accessible from `w`, i.e. every way of changing `x` alone.
pub fn satisfies_k(model: &FolkModel, w: &[Element], phi: &Formula) -> Result<bool, KripkeError> {
    if w.len() != model.vars.len() {
        return Err(KripkeError::PreconditionViolated(format!(
            "world has {} coordinates but V has {} variables",
            w.len(),
            model.vars.len()
        )));
    }
    fn go(model: &FolkModel, w: &mut Vec<Element>, phi: &Formula) -> Result<bool, KripkeError> {
        Ok(match phi {
            Formula::True => true,
            Formula::Atom(p, args) => {
                let r = model
                    .base
                    .predicate(p)
                    .ok_or_else(|| EvalError::UnknownPredicate(p.clone()))?;
                let t = args
                    .iter()
                    .map(|a| model.eval_term(a, w))
                    .collect::<Result<Tuple, _>>()?;
                r.contains(&t)
            }
            Formula::Eq(l, r) => model.eval_term(l, w)? == model.eval_term(r, w)?,
            Formula::And(l, r) => go(model, w, l)? && go(model, w, r)?,
            Formula::Not(f) => !go(model, w, f)?,
            Formula::Exists(x, f) => {
                let i = model.var_index(x)?;
                let saved = w[i];
                let mut found = false;
                for d in model.domain().elements() {
                    w[i] = d;
                    if go(model, w, f)? {
                        found = true;
                        break;
                    }
                }
                w[i] = saved;
                found
            }
        })
    }
    go(model, &mut w.to_vec(), phi)
}

/// True iff satisfied at every world of `D^V`.
pub fn truth_k(model: &FolkModel, phi: &Formula) -> Result<bool, KripkeError> {
    for w in model.worlds() {
        if !satisfies_k(model, &w, phi)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The extension of `phi` at world `w`: tuples `d` over the free variables
/// such that the ground sentence `phi/d` holds at `w`.
pub fn per_world_extension(model: &FolkModel, w: &[Element], phi: &Formula) -> Result<Relation, KripkeError> {
    let vars = free_var_tuple(phi);
    let d = model.domain();
    let mut out = Relation::empty(vars.len());
    for t in d.tuples(vars.len()) {
        let g: BTreeMap<String, String> = vars
            .iter()
            .zip(&t)
            .map(|(x, &e)| (x.to_string(), d.name(e).to_string()))
            .collect();
        let sentence = ground(phi, &g).expect("all free variables assigned");
        if satisfies_k(model, w, &sentence)? {
            out.insert(t).expect("arity matches");
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquivalenceCheck {
    pub reflexive: bool,
    pub symmetric: bool,
    pub transitive: bool,
}

impl EquivalenceCheck {
    pub fn holds(&self) -> bool {
        self.reflexive && self.symmetric && self.transitive
    }
}

/// Check a relation over `0..n` for the three equivalence properties.
pub fn check_equivalence(pairs: &BTreeSet<(usize, usize)>, n: usize) -> EquivalenceCheck {
    let reflexive = (0..n).all(|a| pairs.contains(&(a, a)));
    let symmetric = pairs.iter().all(|&(a, b)| pairs.contains(&(b, a)));
    let transitive = pairs.iter().all(|&(a, b)| {
        pairs
            .range((b, 0)..=(b, usize::MAX))
            .all(|&(_, c)| pairs.contains(&(a, c)))
    });
    EquivalenceCheck {
        reflexive,
        symmetric,
        transitive,
    }
}

/// Name of the built-in intensional relation relating every pair of inner
/// models.
pub const S5_RELATION: &str = "dia";

/// The intensional enrichment of a multi-modal model: every world is an inner
/// model paired with one of the frame's explicit worlds.
#[derive(Debug, Clone)]
pub struct EnrichedModel {
    frame: KripkeFrame,
    labels: Vec<String>,
    models: Vec<Vec<Interpretation>>,
    relations: BTreeMap<String, BTreeSet<(usize, usize)>>,
}

impl EnrichedModel {
    /// `models[i]` holds one table per explicit world of `frame`. The full
    /// relation is installed as [`S5_RELATION`].
    pub fn new(frame: KripkeFrame, labels: Vec<String>, models: Vec<Vec<Interpretation>>) -> Result<Self, KripkeError> {
        if labels.len() != models.len() {
            return Err(KripkeError::PreconditionViolated("one label per inner model required".into()));
        }
        if let Some(bad) = models.iter().position(|m| m.len() != frame.worlds().len()) {
            return Err(KripkeError::PreconditionViolated(format!(
                "inner model {bad} does not have one table per explicit world"
            )));
        }
        let n = models.len();
        let full = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        let mut relations = BTreeMap::new();
        relations.insert(S5_RELATION.to_string(), full);
        Ok(EnrichedModel {
            frame,
            labels,
            models,
            relations,
        })
    }

    /// The enrichment of first-order logic over a world set: each world is a
    /// Tarski model used as a rigid inner model with one explicit world.
    pub fn over_worlds(worlds: &WorldSet) -> Self {
        let frame = KripkeFrame::new(vec!["*".to_string()]);
        let labels = worlds.iter().map(|w| w.label()).collect();
        let models = worlds.iter().map(|w| vec![w.interpretation().clone()]).collect();
        EnrichedModel::new(frame, labels, models).expect("shapes agree")
    }

    pub fn with_relation(mut self, name: &str, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, KripkeError> {
        let pairs: BTreeSet<_> = pairs.into_iter().collect();
        if let Some(&(a, b)) = pairs.iter().find(|(a, b)| *a >= self.models.len() || *b >= self.models.len()) {
            return Err(KripkeError::WorldOutOfRange(a.max(b)));
        }
        self.relations.insert(name.to_string(), pairs);
        Ok(self)
    }

    pub fn frame(&self) -> &KripkeFrame {
        &self.frame
    }

    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn inner(&self, w: usize) -> &[Interpretation] {
        &self.models[w]
    }

    /// Satisfaction at the generalized world `(w, u, g)`: inner model `w`,
    /// explicit world `u`, assignment `g`.
    pub fn satisfies(&self, w: usize, u: usize, g: &Assignment, phi: &ModalFormula) -> Result<bool, KripkeError> {
        let inner = self.models.get(w).ok_or(KripkeError::WorldOutOfRange(w))?;
        let m = inner.get(u).ok_or(KripkeError::WorldOutOfRange(u))?;
        Ok(match phi {
            ModalFormula::True => true,
            ModalFormula::Atom(p, args) => tarski::atom_holds(m, g, p, args)?,
            ModalFormula::Eq(l, r) => tarski::eval_term(l, m, g)? == tarski::eval_term(r, m, g)?,
            ModalFormula::And(l, r) => self.satisfies(w, u, g, l)? && self.satisfies(w, u, g, r)?,
            ModalFormula::Not(f) => !self.satisfies(w, u, g, f)?,
            ModalFormula::Exists(x, f) => {
                let mut g = g.clone();
                for d in m.domain().elements() {
                    g.set(x, d);
                    if self.satisfies(w, u, &g, f)? {
                        return Ok(true);
                    }
                }
                false
            }
            ModalFormula::Diamond(name, f) => {
                for v in self.frame.successors(name, u)? {
                    if self.satisfies(w, v, g, f)? {
                        return Ok(true);
                    }
                }
                false
            }
            ModalFormula::IntDiamond(name, f) => {
                let rel = self
                    .relations
                    .get(name)
                    .ok_or_else(|| KripkeError::UndeclaredModality(format!("^{name}")))?;
                for &(_, w2) in rel.range((w, 0)..=(w, usize::MAX)) {
                    if self.satisfies(w2, u, g, f)? {
                        return Ok(true);
                    }
                }
                false
            }
        })
    }

    /// Tuples over `vars` satisfying `phi` at `(w, u)`.
    pub fn extension_at(&self, w: usize, u: usize, vars: &VarTuple, phi: &ModalFormula) -> Result<Relation, KripkeError> {
        let m = self
            .models
            .get(w)
            .and_then(|inner| inner.get(u))
            .ok_or(KripkeError::WorldOutOfRange(w))?;
        let mut out = Relation::empty(vars.len());
        for t in m.domain().tuples(vars.len()) {
            let g = Assignment::from_tuple(vars.iter(), &t);
            if self.satisfies(w, u, &g, phi)? {
                out.insert(t).expect("arity matches");
            }
        }
        Ok(out)
    }

    /// Whether `phi` holds at every generalized world; vacuously true when
    /// there are no inner models.
    pub fn valid(&self, phi: &ModalFormula) -> Result<bool, KripkeError> {
        let vars = phi.free_var_tuple();
        for w in 0..self.models.len() {
            for u in 0..self.frame.worlds().len() {
                let ext = self.extension_at(w, u, &vars, phi)?;
                let d = self.models[w][u].domain();
                if ext.len() as u128 != d.tuple_count(vars.len()) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reduction {
    /// Single explicit world `ℏ` with `ℛ = {(ℏ,ℏ)}`: `<r>φ` and `φ` coincide.
    ActualWorld,
    /// Only nullary predicates and no functions: `D^∅ = {*}` and quantifiers
    /// change nothing.
    EmptyVocabulary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionEntry {
    pub formula: String,
    pub valuations: usize,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionReport {
    pub kind: Reduction,
    pub entries: Vec<ReductionEntry>,
}

impl ReductionReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.ok)
    }
}

/// Plain truth-table evaluation; quantifiers are skipped.
fn propositional_value(phi: &Formula, valuation: &Interpretation) -> Result<bool, KripkeError> {
    Ok(match phi {
        Formula::True => true,
        Formula::Atom(p, args) if args.is_empty() => valuation
            .predicate(p)
            .ok_or_else(|| EvalError::UnknownPredicate(p.clone()))?
            .is_truth(),
        Formula::Atom(..) | Formula::Eq(..) => {
            return Err(KripkeError::PreconditionViolated(format!("`{phi}` is not propositional")))
        }
        Formula::And(l, r) => propositional_value(l, valuation)? && propositional_value(r, valuation)?,
        Formula::Not(f) => !propositional_value(f, valuation)?,
        Formula::Exists(_, f) => propositional_value(f, valuation)?,
    })
}

fn strip_quantifiers(phi: &Formula) -> Formula {
    match phi {
        Formula::Exists(_, f) => strip_quantifiers(f),
        Formula::And(l, r) => Formula::and(strip_quantifiers(l), strip_quantifiers(r)),
        Formula::Not(f) => Formula::not(strip_quantifiers(f)),
        other => other.clone(),
    }
}

/// Every interpretation of the nullary predicates of `sig` over `domain`.
fn valuations(sig: &std::sync::Arc<Signature>, domain: &std::sync::Arc<Domain>) -> Vec<Interpretation> {
    let n = sig.predicates().len();
    (0..1u64 << n)
        .map(|bits| {
            let preds = (0..n).map(|i| Relation::from_bool(bits >> i & 1 == 1)).collect();
            Interpretation::from_parts(sig.clone(), domain.clone(), preds, Vec::new()).expect("nullary tables")
        })
        .collect()
}

/// Check one of the two reductions of the generalized semantics to plain
/// propositional logic, formula by formula, over every valuation of `sig`.
pub fn reduction_check(kind: Reduction, sig: &Signature, domain: &Domain, corpus: &[Formula]) -> Result<ReductionReport, KripkeError> {
    if !sig.functions().is_empty() || sig.predicates().iter().any(|(_, k)| *k > 0) {
        return Err(KripkeError::PreconditionViolated(
            "signature must contain only nullary predicates".into(),
        ));
    }
    for phi in corpus {
        let has_vars = !phi.vars().is_empty();
        let has_open_atoms = !free_var_tuple(&strip_quantifiers(phi)).is_empty()
            || matches!(kind, Reduction::ActualWorld) && has_vars;
        if has_open_atoms || contains_identity(phi) {
            return Err(KripkeError::PreconditionViolated(format!("`{phi}` mentions variables")));
        }
    }
    let sig = std::sync::Arc::new(sig.clone());
    let domain = std::sync::Arc::new(domain.clone());
    let vals = valuations(&sig, &domain);
    let mut entries = Vec::new();
    for phi in corpus {
        let mut ok = true;
        let mut detail = String::new();
        for (i, m) in vals.iter().enumerate() {
            let expected = propositional_value(phi, m)?;
            let values: Vec<bool> = match kind {
                Reduction::ActualWorld => {
                    let frame = KripkeFrame::new(vec!["ℏ".to_string()]).with_relation("r", [(0, 0)])?;
                    let tables = std::slice::from_ref(m);
                    let g = Assignment::new();
                    let plain = satisfies_generalized(&frame, tables, 0, &g, &phi.into())?;
                    let boxed = satisfies_generalized(&frame, tables, 0, &g, &ModalFormula::diamond("r", phi.into()))?;
                    vec![plain, boxed]
                }
                Reduction::EmptyVocabulary => {
                    let empty = flat(m, Vec::<String>::new());
                    if empty.world_count() != 1 {
                        ok = false;
                        detail = format!("D^∅ has {} worlds", empty.world_count());
                    }
                    let mut vs = vec![satisfies_k(&empty, &[], &strip_quantifiers(phi))?];
                    let full = flat(m, phi.vars());
                    for w in full.worlds() {
                        vs.push(satisfies_k(&full, &w, phi)?);
                    }
                    vs
                }
            };
            if values.iter().any(|&v| v != expected) {
                ok = false;
                detail = format!("valuation #{i}: expected {expected}, modal values {values:?}");
                break;
            }
        }
        entries.push(ReductionEntry {
            formula: phi.to_string(),
            valuations: vals.len(),
            ok,
            detail,
        });
    }
    Ok(ReductionReport { kind, entries })
}

fn contains_identity(phi: &Formula) -> bool {
    match phi {
        Formula::Eq(..) => true,
        Formula::True | Formula::Atom(..) => false,
        Formula::And(l, r) => contains_identity(l) || contains_identity(r),
        Formula::Not(f) | Formula::Exists(_, f) => contains_identity(f),
    }
}
