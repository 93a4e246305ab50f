//! Seeded random formulas, relations and interpretations.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::kripke::ModalFormula;
use crate::relalg::{Domain, Relation};
use crate::syntax::{free_var_tuple, Formula, Signature, Term};
use crate::tarski::{FunctionTable, Interpretation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenConfig {
    pub max_depth: usize,
    pub vars: Vec<String>,
    /// Nesting limit for function applications inside terms.
    pub max_term_depth: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_depth: 5,
            vars: ["x", "y", "z"].map(String::from).to_vec(),
            max_term_depth: 1,
        }
    }
}

/// Formula generator over a signature. Connectives are drawn uniformly from
/// leaf, `&`, `~`, `exists` until the depth budget runs out.
pub struct Generator {
    rng: ChaCha8Rng,
    sig: Signature,
    config: GenConfig,
}

impl Generator {
    pub fn new(sig: &Signature, seed: u64) -> Self {
        Self::with_config(sig, seed, GenConfig::default())
    }

    pub fn with_config(sig: &Signature, seed: u64, config: GenConfig) -> Self {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            sig: sig.clone(),
            config,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    fn var(&mut self) -> String {
        self.config.vars.choose(&mut self.rng).expect("nonempty pool").clone()
    }

    pub fn term(&mut self, depth: usize) -> Term {
        let functions = self.sig.functions().to_vec();
        if functions.is_empty() || self.rng.gen_bool(0.6) {
            return Term::Var(self.var());
        }
        let (name, k) = functions.choose(&mut self.rng).expect("nonempty").clone();
        if k > 0 && depth >= self.config.max_term_depth {
            return Term::Var(self.var());
        }
        Term::App(name, (0..k).map(|_| self.term(depth + 1)).collect())
    }

    pub fn atom(&mut self) -> Formula {
        let preds = self.sig.predicates().to_vec();
        let choice = self.rng.gen_range(0..preds.len() + 2);
        if choice == preds.len() {
            return Formula::True;
        }
        if choice == preds.len() + 1 {
            return Formula::Eq(self.term(0), self.term(0));
        }
        let (name, k) = &preds[choice];
        Formula::Atom(name.clone(), (0..*k).map(|_| self.term(0)).collect())
    }

    /// A formula of depth at most `max_depth`.
    pub fn formula(&mut self) -> Formula {
        let d = self.config.max_depth;
        self.formula_at(d)
    }

    pub fn formula_at(&mut self, budget: usize) -> Formula {
        if budget == 0 {
            return self.atom();
        }
        match self.rng.gen_range(0..4) {
            0 => self.atom(),
            1 => Formula::and(self.formula_at(budget - 1), self.formula_at(budget - 1)),
            2 => Formula::not(self.formula_at(budget - 1)),
            _ => {
                let x = self.var();
                Formula::exists(&x, self.formula_at(budget - 1))
            }
        }
    }

    /// A formula with its free variables closed by random quantifiers.
    pub fn sentence(&mut self) -> Formula {
        let mut phi = self.formula();
        for x in free_var_tuple(&phi).as_slice().to_vec() {
            phi = if self.rng.gen_bool(0.5) {
                Formula::exists(&x, phi)
            } else {
                Formula::forall(&x, phi)
            };
        }
        phi
    }

    /// A formula with at least one free variable.
    pub fn open_formula(&mut self) -> Formula {
        loop {
            let phi = self.formula();
            if !free_var_tuple(&phi).is_empty() {
                return phi;
            }
        }
    }

    /// A quantifier-free formula over the nullary predicates only.
    pub fn propositional(&mut self, budget: usize) -> Formula {
        let props: Vec<String> = self
            .sig
            .predicates()
            .iter()
            .filter(|(_, k)| *k == 0)
            .map(|(n, _)| n.clone())
            .collect();
        if budget == 0 || self.rng.gen_bool(0.3) {
            return match props.choose(&mut self.rng) {
                Some(p) if self.rng.gen_bool(0.85) => Formula::atom(p, Vec::new()),
                _ => Formula::True,
            };
        }
        if self.rng.gen_bool(0.5) {
            Formula::and(self.propositional(budget - 1), self.propositional(budget - 1))
        } else {
            Formula::not(self.propositional(budget - 1))
        }
    }

    /// A formula with `<r>` inserted above random subformulas, `r` drawn
    /// from `modalities`.
    pub fn modal_formula(&mut self, modalities: &[&str]) -> ModalFormula {
        let phi = self.formula();
        self.modalize(&phi, modalities)
    }

    fn modalize(&mut self, phi: &Formula, modalities: &[&str]) -> ModalFormula {
        let inner = match phi {
            Formula::And(l, r) => ModalFormula::and(self.modalize(l, modalities), self.modalize(r, modalities)),
            Formula::Not(f) => ModalFormula::not(self.modalize(f, modalities)),
            Formula::Exists(x, f) => ModalFormula::exists(x, self.modalize(f, modalities)),
            atomic => atomic.into(),
        };
        match modalities.choose(&mut self.rng) {
            Some(r) if self.rng.gen_bool(0.3) => ModalFormula::diamond(r, inner),
            _ => inner,
        }
    }

    pub fn relation(&mut self, domain: &Domain, arity: usize) -> Relation {
        let density: f64 = self.rng.gen();
        let chosen: Vec<_> = domain.tuples(arity).filter(|_| self.rng.gen_bool(density)).collect();
        Relation::new(arity, chosen).expect("tuples of the right arity")
    }

    pub fn interpretation(&mut self, domain: &Arc<Domain>) -> Interpretation {
        let preds = self.sig.predicates().to_vec();
        let fns = self.sig.functions().to_vec();
        let predicates = preds.iter().map(|(_, k)| self.relation(domain, *k)).collect();
        let n = domain.len();
        let functions = fns
            .iter()
            .map(|(_, k)| {
                let cells = domain.tuple_count(*k) as usize;
                let values = (0..cells).map(|_| self.rng.gen_range(0..n)).collect();
                FunctionTable::new(*k, domain, values).expect("values in domain")
            })
            .collect();
        Interpretation::from_parts(Arc::new(self.sig.clone()), domain.clone(), predicates, functions)
            .expect("tables match the signature")
    }
}
