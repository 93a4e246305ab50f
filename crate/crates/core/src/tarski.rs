//! Tarskian semantics over finite domains: term valuation, satisfaction,
//! truth, and the extension of a formula as a relation over its free
//! variable tuple.
//!
//! [`extension`] evaluates by enumerating assignments. [`compile_to_algebra`]
//! produces an expression over the relational operators instead; the two
//! must agree on every interpretation.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::relalg::{self, Domain, Element, JoinSpec, RelError, Relation, Tuple};
use crate::syntax::{free_var_tuple, Formula, Signature, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable `{0}` has no assigned value")]
    UnassignedVariable(String),
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("`{symbol}` expects {expected} arguments, got {found}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("element `{0}` is not in the domain")]
    UnknownElement(String),
    #[error(transparent)]
    Relation(#[from] RelError),
}

/// Graph of a total function `D^k -> D`, indexed by argument tuple in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunctionTable {
    arity: usize,
    values: Vec<Element>,
}

impl FunctionTable {
    pub fn constant(arity: usize, domain: &Domain, value: Element) -> Self {
        FunctionTable {
            arity,
            values: vec![value; domain.tuple_count(arity) as usize],
        }
    }

    /// `values[i]` is the image of the i-th tuple of `D^arity`.
    pub fn new(arity: usize, domain: &Domain, values: Vec<Element>) -> Result<Self, RelError> {
        let expected = domain.tuple_count(arity) as usize;
        if values.len() != expected {
            return Err(RelError::TupleArity {
                arity: expected,
                found: values.len(),
            });
        }
        if let Some(&e) = values.iter().find(|&&e| e >= domain.len()) {
            return Err(RelError::ForeignElement(e, domain.len()));
        }
        Ok(FunctionTable { arity, values })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[Element] {
        &self.values
    }

    pub fn apply(&self, args: &[Element], domain_size: usize) -> Element {
        debug_assert_eq!(args.len(), self.arity);
        let idx = args.iter().fold(0usize, |acc, &a| acc * domain_size + a);
        self.values[idx]
    }
}

/// A Tarski interpretation: a finite domain with an extension for every
/// predicate and a total graph for every function symbol. Identity is always
/// the diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpretation {
    signature: Arc<Signature>,
    domain: Arc<Domain>,
    predicates: Vec<Relation>,
    functions: Vec<FunctionTable>,
}

impl Interpretation {
    /// Every predicate empty, every function constantly the first element.
    pub fn new(signature: Arc<Signature>, domain: Arc<Domain>) -> Self {
        let predicates = signature
            .predicates()
            .iter()
            .map(|(_, k)| Relation::empty(*k))
            .collect();
        let functions = signature
            .functions()
            .iter()
            .map(|(_, k)| FunctionTable::constant(*k, &domain, 0))
            .collect();
        Interpretation {
            signature,
            domain,
            predicates,
            functions,
        }
    }

    pub fn from_parts(
        signature: Arc<Signature>,
        domain: Arc<Domain>,
        predicates: Vec<Relation>,
        functions: Vec<FunctionTable>,
    ) -> Result<Self, EvalError> {
        let mut m = Interpretation::new(signature.clone(), domain);
        for ((name, _), r) in signature.predicates().iter().zip(predicates) {
            m.set_predicate(name, r)?;
        }
        for ((name, _), f) in signature.functions().iter().zip(functions) {
            m.set_function(name, f)?;
        }
        Ok(m)
    }

    pub fn set_predicate(&mut self, name: &str, r: Relation) -> Result<(), EvalError> {
        let i = self
            .signature
            .predicate_index(name)
            .ok_or_else(|| EvalError::UnknownPredicate(name.to_string()))?;
        let expected = self.signature.predicates()[i].1;
        if r.arity() != expected {
            return Err(EvalError::ArityMismatch {
                symbol: name.to_string(),
                expected,
                found: r.arity(),
            });
        }
        if r.iter().flatten().any(|&e| e >= self.domain.len()) {
            return Err(RelError::ForeignElement(self.domain.len(), self.domain.len()).into());
        }
        self.predicates[i] = r;
        Ok(())
    }

    pub fn set_function(&mut self, name: &str, f: FunctionTable) -> Result<(), EvalError> {
        let i = self
            .signature
            .function_index(name)
            .ok_or_else(|| EvalError::UnknownFunction(name.to_string()))?;
        let expected = self.signature.functions()[i].1;
        if f.arity() != expected {
            return Err(EvalError::ArityMismatch {
                symbol: name.to_string(),
                expected,
                found: f.arity(),
            });
        }
        self.functions[i] = f;
        Ok(())
    }

    pub fn with_predicate(mut self, name: &str, r: Relation) -> Result<Self, EvalError> {
        self.set_predicate(name, r)?;
        Ok(self)
    }

    pub fn with_function(mut self, name: &str, f: FunctionTable) -> Result<Self, EvalError> {
        self.set_function(name, f)?;
        Ok(self)
    }

    pub fn with_constant(self, name: &str, element: &str) -> Result<Self, EvalError> {
        let e = self
            .domain
            .index(element)
            .ok_or_else(|| EvalError::UnknownElement(element.to_string()))?;
        let table = FunctionTable::constant(0, &self.domain, e);
        self.with_function(name, table)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn signature_arc(&self) -> &Arc<Signature> {
        &self.signature
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn domain_arc(&self) -> &Arc<Domain> {
        &self.domain
    }

    pub fn predicate(&self, name: &str) -> Option<&Relation> {
        self.signature.predicate_index(name).map(|i| &self.predicates[i])
    }

    pub fn function(&self, name: &str) -> Option<&FunctionTable> {
        self.signature.function_index(name).map(|i| &self.functions[i])
    }

    pub fn predicates(&self) -> &[Relation] {
        &self.predicates
    }

    pub fn functions(&self) -> &[FunctionTable] {
        &self.functions
    }

    pub fn identity(&self) -> Relation {
        relalg::identity_relation(&self.domain)
    }
}

/// A variable assignment `g`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Assignment(BTreeMap<String, Element>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, x: &str) -> Option<Element> {
        self.0.get(x).copied()
    }

    pub fn set(&mut self, x: &str, d: Element) {
        self.0.insert(x.to_string(), d);
    }

    /// The x-variant of this assignment.
    pub fn with(&self, x: &str, d: Element) -> Assignment {
        let mut g = self.clone();
        g.set(x, d);
        g
    }

    pub fn from_tuple<'a>(vars: impl IntoIterator<Item = &'a str>, values: &[Element]) -> Assignment {
        Assignment(vars.into_iter().map(str::to_string).zip(values.iter().copied()).collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Element)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Variable to element-name map, the form [`crate::syntax::ground`] takes.
    pub fn to_names(&self, domain: &Domain) -> BTreeMap<String, String> {
        self.0
            .iter()
            .map(|(k, &v)| (k.clone(), domain.name(v).to_string()))
            .collect()
    }
}

impl<S: Into<String>> FromIterator<(S, Element)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (S, Element)>>(iter: I) -> Self {
        Assignment(iter.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }
}

/// `g*(t)`.
pub fn eval_term(t: &Term, m: &Interpretation, g: &Assignment) -> Result<Element, EvalError> {
    match t {
        Term::Var(x) => g.get(x).ok_or_else(|| EvalError::UnassignedVariable(x.clone())),
        Term::Elem(e) => m
            .domain()
            .index(e)
            .ok_or_else(|| EvalError::UnknownElement(e.clone())),
        Term::App(f, args) => {
            let table = m
                .function(f)
                .ok_or_else(|| EvalError::UnknownFunction(f.clone()))?;
            if table.arity() != args.len() {
                return Err(EvalError::ArityMismatch {
                    symbol: f.clone(),
                    expected: table.arity(),
                    found: args.len(),
                });
            }
            let vals = args
                .iter()
                .map(|a| eval_term(a, m, g))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(table.apply(&vals, m.domain().len()))
        }
    }
}

pub(crate) fn atom_holds(m: &Interpretation, g: &Assignment, pred: &str, args: &[Term]) -> Result<bool, EvalError> {
    let r = m
        .predicate(pred)
        .ok_or_else(|| EvalError::UnknownPredicate(pred.to_string()))?;
    if r.arity() != args.len() {
        return Err(EvalError::ArityMismatch {
            symbol: pred.to_string(),
            expected: r.arity(),
            found: args.len(),
        });
    }
    let t = args
        .iter()
        .map(|a| eval_term(a, m, g))
        .collect::<Result<Tuple, _>>()?;
    Ok(r.contains(&t))
}

/// Whether `g` satisfies `phi` in `m`. Quantifiers search the whole domain.
pub fn satisfies(m: &Interpretation, g: &Assignment, phi: &Formula) -> Result<bool, EvalError> {
    match phi {
        Formula::True => Ok(true),
        Formula::Atom(p, args) => atom_holds(m, g, p, args),
        Formula::Eq(l, r) => Ok(eval_term(l, m, g)? == eval_term(r, m, g)?),
        Formula::And(l, r) => Ok(satisfies(m, g, l)? && satisfies(m, g, r)?),
        Formula::Not(inner) => Ok(!satisfies(m, g, inner)?),
        Formula::Exists(x, body) => {
            let mut g = g.clone();
            for d in m.domain().elements() {
                g.set(x, d);
                if satisfies(m, &g, body)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

/// `I_T*(phi)`: the value tuples of the free variables, in free-tuple order,
/// under which `phi` is satisfied.
pub fn extension(m: &Interpretation, phi: &Formula) -> Result<Relation, EvalError> {
    let vars = free_var_tuple(phi);
    let mut out = Relation::empty(vars.len());
    for t in m.domain().tuples(vars.len()) {
        let g = Assignment::from_tuple(vars.iter(), &t);
        if satisfies(m, &g, phi)? {
            out.insert(t)?;
        }
    }
    Ok(out)
}

/// True iff satisfied under every assignment: `{<>}` for sentences, `D^k`
/// for open formulas.
pub fn truth(m: &Interpretation, phi: &Formula) -> Result<bool, EvalError> {
    let ext = extension(m, phi)?;
    Ok(ext.len() as u128 == m.domain().tuple_count(ext.arity()))
}

/// An expression over the extensional algebra whose value in any
/// interpretation is the extension of the formula it was compiled from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraExpr {
    Truth,
    /// `R_=` for `x = y` over distinct variables.
    Identity,
    /// Base extension of an atom (any identity atom that is not `x = y` over
    /// distinct variables also lands here).
    Atom(Formula),
    Join(Box<AlgebraExpr>, Box<AlgebraExpr>, JoinSpec),
    Complement(Box<AlgebraExpr>, usize),
    ProjectOut(Box<AlgebraExpr>, usize),
}

/// Join spec pairing each variable of `right` that also occurs in `left`.
pub fn join_spec_for(left: &crate::syntax::VarTuple, right: &crate::syntax::VarTuple) -> JoinSpec {
    let pairs = right
        .iter()
        .enumerate()
        .filter_map(|(j, v)| left.position(v).map(|i| (i, j + 1)))
        .collect();
    JoinSpec::new(pairs).expect("variable tuples are duplicate-free")
}

pub fn compile_to_algebra(phi: &Formula) -> AlgebraExpr {
    match phi {
        Formula::True => AlgebraExpr::Truth,
        Formula::Eq(Term::Var(x), Term::Var(y)) if x != y => AlgebraExpr::Identity,
        Formula::Atom(..) | Formula::Eq(..) => AlgebraExpr::Atom(phi.clone()),
        Formula::And(l, r) => {
            let spec = join_spec_for(&free_var_tuple(l), &free_var_tuple(r));
            AlgebraExpr::Join(Box::new(compile_to_algebra(l)), Box::new(compile_to_algebra(r)), spec)
        }
        Formula::Not(inner) => AlgebraExpr::Complement(Box::new(compile_to_algebra(inner)), free_var_tuple(inner).len()),
        Formula::Exists(x, body) => {
            let m = free_var_tuple(body).position(x).unwrap_or(0);
            AlgebraExpr::ProjectOut(Box::new(compile_to_algebra(body)), m)
        }
    }
}

impl AlgebraExpr {
    pub fn evaluate(&self, m: &Interpretation) -> Result<Relation, EvalError> {
        Ok(match self {
            AlgebraExpr::Truth => Relation::truth(),
            AlgebraExpr::Identity => m.identity(),
            AlgebraExpr::Atom(atom) => extension(m, atom)?,
            AlgebraExpr::Join(l, r, s) => relalg::natural_join(&l.evaluate(m)?, &r.evaluate(m)?, s)?,
            AlgebraExpr::Complement(inner, _) => relalg::complement(&inner.evaluate(m)?, m.domain())?,
            AlgebraExpr::ProjectOut(inner, n) => relalg::project_out(&inner.evaluate(m)?, *n),
        })
    }
}

impl fmt::Display for AlgebraExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraExpr::Truth => f.write_str("{<>}"),
            AlgebraExpr::Identity => f.write_str("R_="),
            AlgebraExpr::Atom(a) => write!(f, "[{a}]"),
            AlgebraExpr::Join(l, r, s) => write!(f, "join{s}({l}, {r})"),
            AlgebraExpr::Complement(inner, k) => write!(f, "compl{k}({inner})"),
            AlgebraExpr::ProjectOut(inner, n) => write!(f, "proj-{n}({inner})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::m1;
    use crate::syntax::Term;

    fn v(x: &str) -> Term {
        Term::var(x)
    }

    #[test]
    fn term_valuation() {
        let m = m1();
        let g: Assignment = [("x", 0)].into_iter().collect();
        assert_eq!(eval_term(&v("x"), &m, &g).unwrap(), 0);
        assert_eq!(eval_term(&Term::constant("c"), &m, &Assignment::new()).unwrap(), 0);
        assert_eq!(
            eval_term(&v("y"), &m, &g),
            Err(EvalError::UnassignedVariable("y".into()))
        );
    }

    #[test]
    fn function_application_uses_graph() {
        let sig = Arc::new(Signature::new().with_function("f", 1).unwrap().with_function("c", 0).unwrap());
        let d = Arc::new(Domain::new(["a", "b"]).unwrap());
        let m = Interpretation::new(sig, d.clone())
            .with_function("f", FunctionTable::new(1, &d, vec![1, 0]).unwrap())
            .unwrap();
        let t = Term::app("f", vec![Term::constant("c")]);
        assert_eq!(eval_term(&t, &m, &Assignment::new()).unwrap(), 1);
    }

    #[test]
    fn satisfaction_examples() {
        let m = m1();
        let px = Formula::atom("p", vec![v("x")]);
        let g: Assignment = [("x", 0)].into_iter().collect();
        assert!(satisfies(&m, &g, &px).unwrap());
        let contra = Formula::exists("x", Formula::and(px.clone(), Formula::not(px)));
        assert!(!satisfies(&m, &Assignment::new(), &contra).unwrap());
        let g: Assignment = [("x", 0), ("y", 0)].into_iter().collect();
        assert!(satisfies(&m, &g, &Formula::eq(v("x"), v("y"))).unwrap());
    }

    #[test]
    fn extension_examples() {
        let m = m1();
        let d = m.domain().clone();
        let f = Formula::and(Formula::atom("p", vec![v("x")]), Formula::atom("q", vec![v("x"), v("y")]));
        assert_eq!(extension(&m, &f).unwrap().render_lines(&d), ["(a,b)"]);
        assert_eq!(extension(&m, &Formula::True).unwrap(), Relation::truth());
        let np = Formula::not(Formula::atom("p", vec![v("x")]));
        assert_eq!(extension(&m, &np).unwrap().render_lines(&d), ["(b)"]);
    }

    #[test]
    fn truth_examples() {
        let m = m1();
        assert!(truth(&m, &Formula::exists("x", Formula::atom("p", vec![v("x")]))).unwrap());
        assert!(!truth(&m, &Formula::atom("p", vec![v("x")])).unwrap());
        assert!(truth(&m, &Formula::eq(v("x"), v("x"))).unwrap());
    }

    #[test]
    fn compiled_worked_examples() {
        let phi = Formula::atom("phi", ["xi", "xj", "xk", "xl", "xm"].map(v).to_vec());
        let psi = Formula::atom("psi", ["xl", "yi", "xj", "yj"].map(v).to_vec());
        match compile_to_algebra(&Formula::and(phi.clone(), psi)) {
            AlgebraExpr::Join(_, _, s) => assert_eq!(s.pairs(), &[(4, 1), (2, 3)]),
            other => panic!("expected join, got {other}"),
        }
        match compile_to_algebra(&Formula::exists("xk", phi.clone())) {
            AlgebraExpr::ProjectOut(_, n) => assert_eq!(n, 3),
            other => panic!("expected projection, got {other}"),
        }
        match compile_to_algebra(&Formula::not(phi)) {
            AlgebraExpr::Complement(_, k) => assert_eq!(k, 5),
            other => panic!("expected complement, got {other}"),
        }
    }

    #[test]
    fn compiled_agrees_on_fixture() {
        let m = m1();
        let f = Formula::exists(
            "y",
            Formula::and(
                Formula::atom("q", vec![v("x"), v("y")]),
                Formula::not(Formula::eq(v("x"), v("y"))),
            ),
        );
        assert_eq!(compile_to_algebra(&f).evaluate(&m).unwrap(), extension(&m, &f).unwrap());
    }
}
