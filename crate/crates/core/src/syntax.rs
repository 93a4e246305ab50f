//! Core first-order syntax: signatures, terms, formulas and the operations
//! that depend only on syntax (free-variable tuples, substitution, grounding,
//! canonical atom keys).
//!
//! Formulas only ever contain the core connectives `true`, `=`, `&`, `~` and
//! `exists`. The derived connectives are available as constructors that expand
//! on the spot, so every semantic clause downstream handles five cases.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

/// Words that can never be used as symbol names.
pub const KEYWORDS: &[&str] = &["exists", "forall", "true", "false", "pred", "fn", "domain"];

/// Name of the built-in identity predicate.
pub const IDENTITY: &str = "=";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("symbol `{0}` is declared more than once")]
    DuplicateSymbol(String),
    #[error("`{0}` is reserved and cannot be declared")]
    ReservedName(String),
    #[error("`{0}` is not a valid identifier")]
    InvalidName(String),
    #[error("substituting `{term}` for `{var}` would capture a variable under `exists {binder}`")]
    Capture {
        var: String,
        term: String,
        binder: String,
    },
    #[error("no value assigned to free variable `{0}`")]
    MissingAssignment(String),
    #[error("formula is not an atom: {0}")]
    NotAnAtom(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    Predicate,
    Function,
}

/// Predicate and function symbols with fixed arities.
///
/// Declaration order is preserved; it drives the canonical enumeration of
/// interpretations. The identity predicate is implicit and never listed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    predicates: Vec<(String, usize)>,
    functions: Vec<(String, usize)>,
    index: HashMap<String, (SymbolKind, usize)>,
}

pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    fn declare(&mut self, name: &str, arity: usize, kind: SymbolKind) -> Result<(), SyntaxError> {
        if KEYWORDS.contains(&name) || name == IDENTITY {
            return Err(SyntaxError::ReservedName(name.to_string()));
        }
        if !is_identifier(name) {
            return Err(SyntaxError::InvalidName(name.to_string()));
        }
        if self.index.contains_key(name) {
            return Err(SyntaxError::DuplicateSymbol(name.to_string()));
        }
        let list = match kind {
            SymbolKind::Predicate => &mut self.predicates,
            SymbolKind::Function => &mut self.functions,
        };
        self.index.insert(name.to_string(), (kind, list.len()));
        list.push((name.to_string(), arity));
        Ok(())
    }

    pub fn add_predicate(&mut self, name: &str, arity: usize) -> Result<(), SyntaxError> {
        self.declare(name, arity, SymbolKind::Predicate)
    }

    /// Arity-0 functions are constants.
    pub fn add_function(&mut self, name: &str, arity: usize) -> Result<(), SyntaxError> {
        self.declare(name, arity, SymbolKind::Function)
    }

    pub fn with_predicate(mut self, name: &str, arity: usize) -> Result<Self, SyntaxError> {
        self.add_predicate(name, arity)?;
        Ok(self)
    }

    pub fn with_function(mut self, name: &str, arity: usize) -> Result<Self, SyntaxError> {
        self.add_function(name, arity)?;
        Ok(self)
    }

    pub fn predicates(&self) -> &[(String, usize)] {
        &self.predicates
    }

    pub fn functions(&self) -> &[(String, usize)] {
        &self.functions
    }

    pub fn constants(&self) -> impl Iterator<Item = &str> {
        self.functions
            .iter()
            .filter(|(_, k)| *k == 0)
            .map(|(n, _)| n.as_str())
    }

    pub fn kind(&self, name: &str) -> Option<SymbolKind> {
        self.index.get(name).map(|(k, _)| *k)
    }

    pub fn predicate_index(&self, name: &str) -> Option<usize> {
        match self.index.get(name) {
            Some((SymbolKind::Predicate, i)) => Some(*i),
            _ => None,
        }
    }

    pub fn function_index(&self, name: &str) -> Option<usize> {
        match self.index.get(name) {
            Some((SymbolKind::Function, i)) => Some(*i),
            _ => None,
        }
    }

    pub fn predicate_arity(&self, name: &str) -> Option<usize> {
        self.predicate_index(name).map(|i| self.predicates[i].1)
    }

    pub fn function_arity(&self, name: &str) -> Option<usize> {
        self.function_index(name).map(|i| self.functions[i].1)
    }

    pub fn is_empty(&self) -> bool {
        self.predicates.is_empty() && self.functions.is_empty()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (kw, list) in [("pred", &self.predicates), ("fn", &self.functions)] {
            for (name, arity) in list {
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                write!(f, "{kw} {name}/{arity};")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    /// Function application; constants are zero-argument applications.
    App(String, Vec<Term>),
    /// A literal naming a domain element directly. Produced by [`ground`].
    Elem(String),
}

impl Term {
    pub fn var(name: &str) -> Self {
        Term::Var(name.to_string())
    }

    pub fn constant(name: &str) -> Self {
        Term::App(name.to_string(), Vec::new())
    }

    pub fn app(name: &str, args: Vec<Term>) -> Self {
        Term::App(name.to_string(), args)
    }

    pub fn elem(name: &str) -> Self {
        Term::Elem(name.to_string())
    }

    pub(crate) fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Term::Var(x) => out.push(x),
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            Term::Elem(_) => {}
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.into_iter().map(str::to_string).collect()
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
            Term::Elem(_) => true,
        }
    }

    fn replace(&self, x: &str, t: &Term) -> Term {
        match self {
            Term::Var(y) if y == x => t.clone(),
            Term::Var(_) | Term::Elem(_) => self.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.replace(x, t)).collect()),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => f.write_str(x),
            Term::Elem(e) => write!(f, "@{e}"),
            Term::App(name, args) if args.is_empty() => f.write_str(name),
            Term::App(name, args) => {
                write!(f, "{name}(")?;
                write_joined(f, args)?;
                f.write_str(")")
            }
        }
    }
}

fn write_joined<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

/// A first-order formula over the core connectives.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    Atom(String, Vec<Term>),
    Eq(Term, Term),
    And(Box<Formula>, Box<Formula>),
    Not(Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn atom(pred: &str, args: Vec<Term>) -> Self {
        Formula::Atom(pred.to_string(), args)
    }

    pub fn eq(lhs: Term, rhs: Term) -> Self {
        Formula::Eq(lhs, rhs)
    }

    pub fn and(lhs: Formula, rhs: Formula) -> Self {
        Formula::And(Box::new(lhs), Box::new(rhs))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(inner: Formula) -> Self {
        Formula::Not(Box::new(inner))
    }

    pub fn exists(x: &str, body: Formula) -> Self {
        Formula::Exists(x.to_string(), Box::new(body))
    }

    /// `~true`
    pub fn falsum() -> Self {
        Formula::not(Formula::True)
    }

    /// `forall x. body` as `~exists x. ~body`.
    pub fn forall(x: &str, body: Formula) -> Self {
        Formula::not(Formula::exists(x, Formula::not(body)))
    }

    /// `lhs | rhs` as `~(~lhs & ~rhs)`.
    pub fn or(lhs: Formula, rhs: Formula) -> Self {
        Formula::not(Formula::and(Formula::not(lhs), Formula::not(rhs)))
    }

    /// `lhs -> rhs` as `~(lhs & ~rhs)`.
    pub fn implies(lhs: Formula, rhs: Formula) -> Self {
        Formula::not(Formula::and(lhs, Formula::not(rhs)))
    }

    /// `lhs <-> rhs` as the conjunction of both implications.
    pub fn iff(lhs: Formula, rhs: Formula) -> Self {
        Formula::and(
            Formula::implies(lhs.clone(), rhs.clone()),
            Formula::implies(rhs, lhs),
        )
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Atom(..) | Formula::Eq(..))
    }

    pub fn is_sentence(&self) -> bool {
        free_var_tuple(self).is_empty()
    }

    /// Every variable occurring in the formula, free or bound, binders included.
    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_all_vars(&mut out);
        out
    }

    fn collect_all_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::True => {}
            Formula::Atom(_, args) => args.iter().for_each(|t| out.extend(t.vars())),
            Formula::Eq(l, r) => {
                out.extend(l.vars());
                out.extend(r.vars());
            }
            Formula::And(l, r) => {
                l.collect_all_vars(out);
                r.collect_all_vars(out);
            }
            Formula::Not(inner) => inner.collect_all_vars(out),
            Formula::Exists(x, body) => {
                out.insert(x.clone());
                body.collect_all_vars(out);
            }
        }
    }

    /// Height of the syntax tree; atoms and `true` have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::True | Formula::Atom(..) | Formula::Eq(..) => 0,
            Formula::And(l, r) => 1 + l.depth().max(r.depth()),
            Formula::Not(inner) | Formula::Exists(_, inner) => 1 + inner.depth(),
        }
    }

    pub fn has_free(&self, x: &str) -> bool {
        free_var_tuple(self).position(x).is_some()
    }
}

/// The ordered, duplicate-free tuple of free variables of a formula.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct VarTuple(Vec<String>);

impl VarTuple {
    pub fn new(vars: Vec<String>) -> Self {
        let mut seen = BTreeSet::new();
        let vars = vars.into_iter().filter(|v| seen.insert(v.clone())).collect();
        VarTuple(vars)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 1-based position of `x`, as used by the join and projection operators.
    pub fn position(&self, x: &str) -> Option<usize> {
        self.0.iter().position(|v| v == x).map(|i| i + 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }

    pub fn as_slice(&self) -> &[String] {
        &self.0
    }

    /// The tuple of `lhs & rhs`: all of `self`, then the variables of `other`
    /// not already present, in `other`'s order.
    pub fn concat(&self, other: &VarTuple) -> VarTuple {
        let mut vars = self.0.clone();
        vars.extend(other.0.iter().filter(|v| !self.0.contains(v)).cloned());
        VarTuple(vars)
    }

    pub fn without(&self, x: &str) -> VarTuple {
        VarTuple(self.0.iter().filter(|v| *v != x).cloned().collect())
    }
}

impl fmt::Display for VarTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        write_joined(f, &self.0)?;
        f.write_str(")")
    }
}

/// Free variables ordered by their leftmost free occurrence in the written
/// formula.
pub fn free_var_tuple(phi: &Formula) -> VarTuple {
    fn walk<'a>(phi: &'a Formula, bound: &mut Vec<&'a str>, out: &mut Vec<String>) {
        let visit_term = |t: &'a Term, bound: &Vec<&'a str>, out: &mut Vec<String>| {
            let mut vs = Vec::new();
            t.collect_vars(&mut vs);
            for v in vs {
                if !bound.contains(&v) && !out.iter().any(|o| o == v) {
                    out.push(v.to_string());
                }
            }
        };
        match phi {
            Formula::True => {}
            Formula::Atom(_, args) => args.iter().for_each(|t| visit_term(t, bound, out)),
            Formula::Eq(l, r) => {
                visit_term(l, bound, out);
                visit_term(r, bound, out);
            }
            Formula::And(l, r) => {
                walk(l, bound, out);
                walk(r, bound, out);
            }
            Formula::Not(inner) => walk(inner, bound, out),
            Formula::Exists(x, body) => {
                bound.push(x);
                walk(body, bound, out);
                bound.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(phi, &mut Vec::new(), &mut out);
    VarTuple(out)
}

/// Replace every free occurrence of `x` by `t`.
///
/// Fails when a variable of `t` would land under a quantifier binding it.
pub fn substitute(phi: &Formula, x: &str, t: &Term) -> Result<Formula, SyntaxError> {
    let t_vars = t.vars();
    fn go(phi: &Formula, x: &str, t: &Term, t_vars: &BTreeSet<String>) -> Result<Formula, SyntaxError> {
        Ok(match phi {
            Formula::True => Formula::True,
            Formula::Atom(p, args) => Formula::Atom(p.clone(), args.iter().map(|a| a.replace(x, t)).collect()),
            Formula::Eq(l, r) => Formula::Eq(l.replace(x, t), r.replace(x, t)),
            Formula::And(l, r) => Formula::and(go(l, x, t, t_vars)?, go(r, x, t, t_vars)?),
            Formula::Not(inner) => Formula::not(go(inner, x, t, t_vars)?),
            Formula::Exists(y, _) if y == x => phi.clone(),
            Formula::Exists(y, body) => {
                if t_vars.contains(y) && body.has_free(x) {
                    return Err(SyntaxError::Capture {
                        var: x.to_string(),
                        term: t.to_string(),
                        binder: y.clone(),
                    });
                }
                Formula::exists(y, go(body, x, t, t_vars)?)
            }
        })
    }
    go(phi, x, t, &t_vars)
}

/// The sentence `phi/g`: each free variable replaced by an element literal
/// naming its assigned value.
pub fn ground(phi: &Formula, g: &BTreeMap<String, String>) -> Result<Formula, SyntaxError> {
    let mut out = phi.clone();
    for x in free_var_tuple(phi).iter() {
        let value = g
            .get(x)
            .ok_or_else(|| SyntaxError::MissingAssignment(x.to_string()))?;
        // element literals contain no variables, so this never captures
        out = substitute(&out, x, &Term::Elem(value.clone()))?;
    }
    Ok(out)
}

/// Term skeleton inside an [`AtomKey`], with variables numbered by first
/// occurrence starting at 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KeyTerm {
    Var(usize),
    App(String, Vec<KeyTerm>),
    Elem(String),
}

impl fmt::Display for KeyTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KeyTerm::Var(i) => write!(f, "v{i}"),
            KeyTerm::Elem(e) => write!(f, "@{e}"),
            KeyTerm::App(name, args) if args.is_empty() => f.write_str(name),
            KeyTerm::App(name, args) => {
                write!(f, "{name}(")?;
                write_joined(f, args)?;
                f.write_str(")")
            }
        }
    }
}

/// Identifies an atom up to injective renaming of its variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomKey {
    /// Predicate symbol, or [`IDENTITY`] for identity atoms.
    pub symbol: String,
    pub args: Vec<KeyTerm>,
}

impl AtomKey {
    /// Number of distinct variables, which is the arity of the atom's extension.
    pub fn arity(&self) -> usize {
        fn max_var(t: &KeyTerm) -> usize {
            match t {
                KeyTerm::Var(i) => *i,
                KeyTerm::App(_, args) => args.iter().map(max_var).max().unwrap_or(0),
                KeyTerm::Elem(_) => 0,
            }
        }
        self.args.iter().map(max_var).max().unwrap_or(0)
    }

    /// Rebuild an atom whose variables are named `v1, v2, ...`; its free
    /// variable tuple is `(v1, ..., vn)` in that order.
    pub fn to_formula(&self) -> Formula {
        fn term(t: &KeyTerm) -> Term {
            match t {
                KeyTerm::Var(i) => Term::Var(format!("v{i}")),
                KeyTerm::App(f, args) => Term::App(f.clone(), args.iter().map(term).collect()),
                KeyTerm::Elem(e) => Term::Elem(e.clone()),
            }
        }
        let args: Vec<Term> = self.args.iter().map(term).collect();
        if self.symbol == IDENTITY {
            let mut it = args.into_iter();
            let (l, r) = (it.next().unwrap(), it.next().unwrap());
            Formula::Eq(l, r)
        } else {
            Formula::Atom(self.symbol.clone(), args)
        }
    }
}

impl fmt::Display for AtomKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symbol == IDENTITY {
            return write!(f, "{} = {}", self.args[0], self.args[1]);
        }
        f.write_str(&self.symbol)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            write_joined(f, &self.args)?;
            f.write_str(")")?;
        }
        Ok(())
    }
}

pub fn canonical_atom_key(phi: &Formula) -> Result<AtomKey, SyntaxError> {
    fn key(t: &Term, names: &mut Vec<String>) -> KeyTerm {
        match t {
            Term::Var(x) => {
                let i = match names.iter().position(|n| n == x) {
                    Some(i) => i,
                    None => {
                        names.push(x.clone());
                        names.len() - 1
                    }
                };
                KeyTerm::Var(i + 1)
            }
            Term::App(f, args) => KeyTerm::App(f.clone(), args.iter().map(|a| key(a, names)).collect()),
            Term::Elem(e) => KeyTerm::Elem(e.clone()),
        }
    }
    let mut names = Vec::new();
    match phi {
        Formula::Atom(p, args) => Ok(AtomKey {
            symbol: p.clone(),
            args: args.iter().map(|t| key(t, &mut names)).collect(),
        }),
        Formula::Eq(l, r) => Ok(AtomKey {
            symbol: IDENTITY.to_string(),
            args: vec![key(l, &mut names), key(r, &mut names)],
        }),
        other => Err(SyntaxError::NotAnAtom(other.to_string())),
    }
}

// Rendering. The output re-parses to the same tree (see the parser tests).

impl Formula {
    fn fmt_unary(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::And(..) | Formula::Exists(..) | Formula::Eq(..) => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => f.write_str("true"),
            Formula::Atom(p, args) => {
                f.write_str(p)?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    write_joined(f, args)?;
                    f.write_str(")")?;
                }
                Ok(())
            }
            Formula::Eq(l, r) => write!(f, "{l} = {r}"),
            Formula::And(l, r) => {
                match **l {
                    Formula::Exists(..) => write!(f, "({l})")?,
                    _ => write!(f, "{l}")?,
                }
                f.write_str(" & ")?;
                match **r {
                    Formula::And(..) | Formula::Exists(..) => write!(f, "({r})"),
                    _ => write!(f, "{r}"),
                }
            }
            Formula::Not(inner) => {
                f.write_str("~")?;
                inner.fmt_unary(f)
            }
            Formula::Exists(x, body) => {
                write!(f, "exists {x}. ")?;
                match **body {
                    Formula::And(..) => write!(f, "({body})"),
                    _ => write!(f, "{body}"),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &str) -> Term {
        Term::var(x)
    }

    fn names(t: &VarTuple) -> Vec<&str> {
        t.iter().collect()
    }

    #[test]
    fn free_tuple_of_worked_join_example() {
        let phi = Formula::atom("phi", vec![v("xi"), v("xj"), v("xk"), v("xl"), v("xm")]);
        let psi = Formula::atom("psi", vec![v("xl"), v("yi"), v("xj"), v("yj")]);
        let tuple = free_var_tuple(&Formula::and(phi.clone(), psi.clone()));
        assert_eq!(names(&tuple), ["xi", "xj", "xk", "xl", "xm", "yi", "yj"]);
        // composing the sub-tuples gives the same answer
        assert_eq!(tuple, free_var_tuple(&phi).concat(&free_var_tuple(&psi)));
    }

    #[test]
    fn bound_occurrences_do_not_count() {
        let f = Formula::and(
            Formula::atom("p", vec![v("x")]),
            Formula::exists("x", Formula::atom("q", vec![v("x"), v("y")])),
        );
        assert_eq!(names(&free_var_tuple(&f)), ["x", "y"]);

        let g = Formula::and(
            Formula::exists("x", Formula::atom("q", vec![v("x"), v("y")])),
            Formula::atom("p", vec![v("x")]),
        );
        assert_eq!(names(&free_var_tuple(&g)), ["y", "x"]);
        assert_eq!(names(&free_var_tuple(&Formula::atom("p", vec![v("x")]))), ["x"]);
    }

    #[test]
    fn substitution_respects_binders() {
        let f = Formula::and(
            Formula::atom("p", vec![v("x")]),
            Formula::exists("x", Formula::atom("q", vec![v("x")])),
        );
        let got = substitute(&f, "x", &Term::constant("c")).unwrap();
        let want = Formula::and(
            Formula::atom("p", vec![Term::constant("c")]),
            Formula::exists("x", Formula::atom("q", vec![v("x")])),
        );
        assert_eq!(got, want);

        let q = Formula::atom("q", vec![v("x"), v("y")]);
        let got = substitute(&q, "x", &Term::app("f", vec![v("y")])).unwrap();
        assert_eq!(got, Formula::atom("q", vec![Term::app("f", vec![v("y")]), v("y")]));

        let captured = Formula::exists("y", Formula::atom("q", vec![v("x"), v("y")]));
        assert!(matches!(
            substitute(&captured, "x", &v("y")),
            Err(SyntaxError::Capture { .. })
        ));
    }

    #[test]
    fn substitution_under_binder_without_free_target_is_fine() {
        let f = Formula::exists("y", Formula::atom("p", vec![v("y")]));
        assert_eq!(substitute(&f, "x", &v("y")).unwrap(), f);
    }

    #[test]
    fn grounding() {
        let mut g = BTreeMap::new();
        g.insert("x".to_string(), "a".to_string());
        let got = ground(&Formula::atom("p", vec![v("x")]), &g).unwrap();
        assert_eq!(got, Formula::atom("p", vec![Term::elem("a")]));
        assert!(got.is_sentence());

        let closed = Formula::exists("x", Formula::atom("p", vec![v("x")]));
        assert_eq!(ground(&closed, &BTreeMap::new()).unwrap(), closed);

        let open = Formula::atom("q", vec![v("x"), v("y")]);
        assert_eq!(
            ground(&open, &g),
            Err(SyntaxError::MissingAssignment("y".into()))
        );
    }

    #[test]
    fn atom_keys() {
        let key = |f: Formula| canonical_atom_key(&f).unwrap().to_string();
        assert_eq!(key(Formula::atom("p", vec![v("x"), v("y")])), "p(v1,v2)");
        assert_eq!(key(Formula::atom("p", vec![v("y"), v("y")])), "p(v1,v1)");
        assert_eq!(key(Formula::atom("p", vec![Term::constant("c"), v("x")])), "p(c,v1)");
        assert_eq!(
            canonical_atom_key(&Formula::atom("p", vec![v("x"), v("y")])),
            canonical_atom_key(&Formula::atom("p", vec![v("u"), v("v")]))
        );
        assert_ne!(
            canonical_atom_key(&Formula::atom("p", vec![v("x"), v("x")])),
            canonical_atom_key(&Formula::atom("p", vec![v("x"), v("y")]))
        );
        assert!(matches!(
            canonical_atom_key(&Formula::True),
            Err(SyntaxError::NotAnAtom(_))
        ));
    }

    #[test]
    fn key_roundtrips_to_atom() {
        let atom = Formula::atom("q", vec![Term::app("f", vec![v("y")]), v("x"), v("y")]);
        let key = canonical_atom_key(&atom).unwrap();
        assert_eq!(key.arity(), 2);
        assert_eq!(canonical_atom_key(&key.to_formula()).unwrap(), key);
    }

    #[test]
    fn signature_rejects_duplicates_and_keywords() {
        let mut sig = Signature::new();
        sig.add_predicate("p", 1).unwrap();
        assert_eq!(sig.add_predicate("p", 2), Err(SyntaxError::DuplicateSymbol("p".into())));
        assert_eq!(sig.add_function("p", 0), Err(SyntaxError::DuplicateSymbol("p".into())));
        assert!(matches!(sig.add_function("exists", 0), Err(SyntaxError::ReservedName(_))));
        assert_eq!(sig.predicate_arity("p"), Some(1));
    }

    #[test]
    fn derived_connectives_expand() {
        let p = Formula::atom("p", vec![v("x")]);
        assert_eq!(
            Formula::forall("x", p.clone()),
            Formula::not(Formula::exists("x", Formula::not(p.clone())))
        );
        let q = Formula::atom("q", vec![v("x"), v("x")]);
        assert_eq!(
            Formula::implies(p.clone(), q.clone()),
            Formula::not(Formula::and(p, Formula::not(q)))
        );
    }

    #[test]
    fn rendering() {
        let p = Formula::atom("p", vec![v("x")]);
        let f = Formula::exists("x", Formula::and(p.clone(), Formula::not(p)));
        assert_eq!(f.to_string(), "exists x. (p(x) & ~p(x))");
        assert_eq!(Formula::True.to_string(), "true");
        assert_eq!(Formula::eq(v("x"), v("y")).to_string(), "x = y");
    }
}
