//! All interpretations of a signature over a fixed finite domain, the models
//! of a theory among them, and consequence relative to that world space.
//!
//! Consequence here is relative to one finite domain. A verdict of `true`
//! says nothing about larger or infinite domains.

use std::sync::Arc;

use thiserror::Error;

use crate::relalg::{Domain, Element, Relation};
use crate::syntax::{free_var_tuple, Formula, Signature, VarTuple};
use crate::tarski::{self, Assignment, EvalError, FunctionTable, Interpretation};

/// Largest number of interpretations enumerated unless overridden.
pub const DEFAULT_GUARD: u128 = 1_000_000;

/// Environment variable overriding [`DEFAULT_GUARD`].
pub const GUARD_ENV: &str = "FOLI_GUARD";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WorldsError {
    #[error("{count} interpretations exceed the guard of {guard}")]
    GuardExceeded { count: u128, guard: u128 },
    #[error("`{0}` in the theory is not a sentence")]
    OpenFormulaInGamma(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// [`DEFAULT_GUARD`], or the value of `FOLI_GUARD` when set and numeric.
pub fn guard_from_env() -> u128 {
    std::env::var(GUARD_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_GUARD)
}

/// Number of interpretations of `sig` over `domain`, saturating.
pub fn interpretation_count(sig: &Signature, domain: &Domain) -> u128 {
    let n = domain.len() as u128;
    let mut total: u128 = 1;
    for (_, k) in sig.predicates() {
        let cells = domain.tuple_count(*k);
        total = match u32::try_from(cells).ok().and_then(|c| 2u128.checked_pow(c)) {
            Some(f) => total.saturating_mul(f),
            None => u128::MAX,
        };
    }
    for (_, k) in sig.functions() {
        let cells = domain.tuple_count(*k);
        total = match u32::try_from(cells).ok().and_then(|c| n.checked_pow(c)) {
            Some(f) => total.saturating_mul(f),
            None => u128::MAX,
        };
    }
    total
}

/// Canonical enumeration: an odometer whose fastest digits are the tuple bits
/// of the first predicate (bit `i` is the `i`-th tuple in lexicographic order),
/// then the later predicates, then each function's values as base-`|D|`
/// digits.
pub struct Interpretations {
    sig: Arc<Signature>,
    domain: Arc<Domain>,
    pred_tuples: Vec<Vec<Vec<Element>>>,
    pred_bits: Vec<Vec<bool>>,
    fn_values: Vec<Vec<Element>>,
    done: bool,
}

impl Interpretations {
    fn current(&self) -> Interpretation {
        let predicates = self
            .pred_tuples
            .iter()
            .zip(&self.pred_bits)
            .zip(self.sig.predicates())
            .map(|((tuples, bits), (_, k))| {
                let chosen = tuples.iter().zip(bits).filter(|(_, b)| **b).map(|(t, _)| t.clone());
                Relation::new(*k, chosen).expect("tuples of the right arity")
            })
            .collect();
        let functions = self
            .fn_values
            .iter()
            .zip(self.sig.functions())
            .map(|(vals, (_, k))| FunctionTable::new(*k, &self.domain, vals.clone()).expect("total table"))
            .collect();
        Interpretation::from_parts(self.sig.clone(), self.domain.clone(), predicates, functions)
            .expect("tables match the signature")
    }

    fn advance(&mut self) {
        for bits in &mut self.pred_bits {
            for b in bits.iter_mut() {
                *b = !*b;
                if *b {
                    return;
                }
            }
        }
        let n = self.domain.len();
        for vals in &mut self.fn_values {
            for v in vals.iter_mut() {
                *v += 1;
                if *v < n {
                    return;
                }
                *v = 0;
            }
        }
        self.done = true;
    }
}

impl Iterator for Interpretations {
    type Item = Interpretation;

    fn next(&mut self) -> Option<Interpretation> {
        if self.done {
            return None;
        }
        let m = self.current();
        self.advance();
        Some(m)
    }
}

/// Every interpretation of `sig` over `domain` exactly once, in canonical
/// order. The identity predicate is fixed and not enumerated.
pub fn enumerate_interpretations(sig: &Signature, domain: &Domain, guard: u128) -> Result<Interpretations, WorldsError> {
    let count = interpretation_count(sig, domain);
    if count > guard {
        return Err(WorldsError::GuardExceeded { count, guard });
    }
    let pred_tuples: Vec<Vec<Vec<Element>>> = sig
        .predicates()
        .iter()
        .map(|(_, k)| domain.tuples(*k).collect())
        .collect();
    let pred_bits = pred_tuples.iter().map(|t| vec![false; t.len()]).collect();
    let fn_values = sig
        .functions()
        .iter()
        .map(|(_, k)| vec![0; domain.tuple_count(*k) as usize])
        .collect();
    Ok(Interpretations {
        sig: Arc::new(sig.clone()),
        domain: Arc::new(domain.clone()),
        pred_tuples,
        pred_bits,
        fn_values,
        done: false,
    })
}

/// An interpretation together with its index in the canonical enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct World {
    index: u64,
    interp: Interpretation,
}

impl World {
    pub fn index(&self) -> u64 {
        self.index
    }

    /// `w<index>`.
    pub fn label(&self) -> String {
        format!("w{}", self.index)
    }

    pub fn interpretation(&self) -> &Interpretation {
        &self.interp
    }
}

/// The models of a theory among all interpretations over a signature and
/// domain, in canonical order.
#[derive(Debug, Clone)]
pub struct WorldSet {
    signature: Arc<Signature>,
    domain: Arc<Domain>,
    gamma: Vec<Formula>,
    worlds: Vec<World>,
    total: u128,
}

impl WorldSet {
    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn gamma(&self) -> &[Formula] {
        &self.gamma
    }

    /// Size of the unfiltered enumeration.
    pub fn total(&self) -> u128 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, World> {
        self.worlds.iter()
    }

    pub fn get(&self, i: usize) -> Option<&World> {
        self.worlds.get(i)
    }

    /// Whether `phi` is true in every world.
    pub fn all_true(&self, phi: &Formula) -> Result<bool, EvalError> {
        Ok(self.first_falsifier(phi)?.is_none())
    }

    /// The first world in which `phi` is not true.
    pub fn first_falsifier(&self, phi: &Formula) -> Result<Option<&World>, EvalError> {
        for w in &self.worlds {
            if !tarski::truth(&w.interp, phi)? {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }
}

impl<'a> IntoIterator for &'a WorldSet {
    type Item = &'a World;
    type IntoIter = std::slice::Iter<'a, World>;

    fn into_iter(self) -> Self::IntoIter {
        self.worlds.iter()
    }
}

/// The interpretations over `(sig, domain)` satisfying every sentence of `gamma`.
pub fn models_of(gamma: &[Formula], sig: &Signature, domain: &Domain, guard: u128) -> Result<WorldSet, WorldsError> {
    if let Some(open) = gamma.iter().find(|g| !g.is_sentence()) {
        return Err(WorldsError::OpenFormulaInGamma(open.to_string()));
    }
    let total = interpretation_count(sig, domain);
    let mut worlds = Vec::new();
    'outer: for (index, m) in enumerate_interpretations(sig, domain, guard)?.enumerate() {
        for g in gamma {
            if !tarski::satisfies(&m, &Assignment::new(), g)? {
                continue 'outer;
            }
        }
        worlds.push(World {
            index: index as u64,
            interp: m,
        });
    }
    Ok(WorldSet {
        signature: Arc::new(sig.clone()),
        domain: Arc::new(domain.clone()),
        gamma: gamma.to_vec(),
        worlds,
        total,
    })
}

/// The first model of `gamma` in which `phi` is not true.
pub fn countermodel(
    gamma: &[Formula],
    phi: &Formula,
    sig: &Signature,
    domain: &Domain,
    guard: u128,
) -> Result<Option<World>, WorldsError> {
    let worlds = models_of(gamma, sig, domain, guard)?;
    Ok(worlds.first_falsifier(phi)?.cloned())
}

/// `Γ ⊩ φ` over the fixed signature and domain.
pub fn entails(gamma: &[Formula], phi: &Formula, sig: &Signature, domain: &Domain, guard: u128) -> Result<bool, WorldsError> {
    Ok(countermodel(gamma, phi, sig, domain, guard)?.is_none())
}

/// `Γ ⊢_w φ`: at every assignment where all of `gamma` holds in `w`, so does `phi`.
pub fn locally_infers(gamma: &[Formula], phi: &Formula, w: &Interpretation) -> Result<bool, EvalError> {
    let mut vars = VarTuple::new(Vec::new());
    for f in gamma.iter().chain(std::iter::once(phi)) {
        vars = vars.concat(&free_var_tuple(f));
    }
    for t in w.domain().tuples(vars.len()) {
        let g = Assignment::from_tuple(vars.iter(), &t);
        let mut premises = true;
        for f in gamma {
            if !tarski::satisfies(w, &g, f)? {
                premises = false;
                break;
            }
        }
        if premises && !tarski::satisfies(w, &g, phi)? {
            return Ok(false);
        }
    }
    Ok(true)
}
