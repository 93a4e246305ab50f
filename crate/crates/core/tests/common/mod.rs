//! Brute-force reference semantics, written without the library's evaluators.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use foli::relalg::{Domain, Relation};
use foli::syntax::{Formula, Signature, Term};
use foli::tarski::{FunctionTable, Interpretation};

pub type Env = BTreeMap<String, usize>;

pub fn term(m: &Interpretation, g: &Env, t: &Term) -> usize {
    match t {
        Term::Var(x) => g[x],
        Term::Elem(e) => m.domain().names().iter().position(|n| n == e).unwrap(),
        Term::App(f, args) => {
            let n = m.domain().len();
            let vals: Vec<usize> = args.iter().map(|a| term(m, g, a)).collect();
            let mut idx = 0;
            for v in vals {
                idx = idx * n + v;
            }
            m.function(f).unwrap().values()[idx]
        }
    }
}

pub fn sat(m: &Interpretation, g: &Env, phi: &Formula) -> bool {
    match phi {
        Formula::True => true,
        Formula::Eq(l, r) => term(m, g, l) == term(m, g, r),
        Formula::Atom(p, args) => {
            let t: Vec<usize> = args.iter().map(|a| term(m, g, a)).collect();
            m.predicate(p).unwrap().iter().any(|u| *u == t)
        }
        Formula::And(l, r) => sat(m, g, l) && sat(m, g, r),
        Formula::Not(f) => !sat(m, g, f),
        Formula::Exists(x, f) => (0..m.domain().len()).any(|d| {
            let mut h = g.clone();
            h.insert(x.clone(), d);
            sat(m, &h, f)
        }),
    }
}

/// Free variables by leftmost free occurrence, found by scanning the
/// rendered term order.
pub fn free_vars(phi: &Formula) -> Vec<String> {
    fn term_vars(t: &Term, bound: &[String], out: &mut Vec<String>) {
        match t {
            Term::Var(x) => {
                if !bound.contains(x) && !out.contains(x) {
                    out.push(x.clone());
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| term_vars(a, bound, out)),
            Term::Elem(_) => {}
        }
    }
    fn go(phi: &Formula, bound: &mut Vec<String>, out: &mut Vec<String>) {
        match phi {
            Formula::True => {}
            Formula::Eq(l, r) => {
                term_vars(l, bound, out);
                term_vars(r, bound, out);
            }
            Formula::Atom(_, args) => args.iter().for_each(|a| term_vars(a, bound, out)),
            Formula::And(l, r) => {
                go(l, bound, out);
                go(r, bound, out);
            }
            Formula::Not(f) => go(f, bound, out),
            Formula::Exists(x, f) => {
                bound.push(x.clone());
                go(f, bound, out);
                bound.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(phi, &mut Vec::new(), &mut out);
    out
}

pub fn all_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |d| {
                    let mut t = t.clone();
                    t.push(d);
                    t
                })
            })
            .collect();
    }
    out
}

/// `(arity, tuples)` of the formula's extension over its free variables.
pub fn extension(m: &Interpretation, phi: &Formula) -> (usize, BTreeSet<Vec<usize>>) {
    let vars = free_vars(phi);
    let tuples = all_tuples(m.domain().len(), vars.len())
        .into_iter()
        .filter(|t| {
            let g: Env = vars.iter().cloned().zip(t.iter().copied()).collect();
            sat(m, &g, phi)
        })
        .collect();
    (vars.len(), tuples)
}

pub fn truth(m: &Interpretation, phi: &Formula) -> bool {
    let (k, tuples) = extension(m, phi);
    tuples.len() == m.domain().len().pow(k as u32)
}

pub fn matches(r: &Relation, oracle: &(usize, BTreeSet<Vec<usize>>)) -> bool {
    r.arity() == oracle.0 && r.iter().cloned().collect::<BTreeSet<_>>() == oracle.1
}

/// Every interpretation of `sig` over the first `n` letters, decoding the
/// index as mixed-radix digits: predicate tuple bits first (first predicate
/// lowest), then function values.
pub fn all_models(sig: &Signature, n: usize) -> Vec<Interpretation> {
    let d = Arc::new(Domain::of_size(n).unwrap());
    let sig = Arc::new(sig.clone());
    let mut radices = Vec::new();
    for (_, k) in sig.predicates() {
        radices.extend(std::iter::repeat_n(2, n.pow(*k as u32)));
    }
    for (_, k) in sig.functions() {
        radices.extend(std::iter::repeat_n(n, n.pow(*k as u32)));
    }
    let total: usize = radices.iter().product();
    (0..total)
        .map(|mut idx| {
            let mut digits = Vec::new();
            for r in &radices {
                digits.push(idx % r);
                idx /= r;
            }
            let mut it = digits.into_iter();
            let mut m = Interpretation::new(sig.clone(), d.clone());
            for (name, k) in sig.predicates() {
                let tuples: Vec<Vec<usize>> = all_tuples(n, *k)
                    .into_iter()
                    .filter(|_| it.next().unwrap() == 1)
                    .collect();
                m = m.with_predicate(name, Relation::new(*k, tuples).unwrap()).unwrap();
            }
            for (name, k) in sig.functions() {
                let vals: Vec<usize> = (0..n.pow(*k as u32)).map(|_| it.next().unwrap()).collect();
                m = m.with_function(name, FunctionTable::new(*k, &d, vals).unwrap()).unwrap();
            }
            m
        })
        .collect()
}

/// Consequence by brute force: every assignment of every model of `gamma`.
pub fn entails(gamma: &[Formula], phi: &Formula, models: &[Interpretation]) -> bool {
    models
        .iter()
        .filter(|m| gamma.iter().all(|g| truth(m, g)))
        .all(|m| truth(m, phi))
}
