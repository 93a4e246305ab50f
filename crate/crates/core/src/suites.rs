//! Seeded verification suites. Each suite runs a random corpus through two
//! routes that should agree and counts disagreements.

use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::fixtures;
use crate::gen::Generator;
use crate::intensional::{self, extensionalize, intend, is};
use crate::kripke::{self, check_equivalence, flat, EnrichedModel, KripkeFrame, ModalFormula, Reduction};
use crate::parser::{interpretation_to_json, parse_formula};
use crate::relalg::{self, Domain, JoinSpec, Relation};
use crate::syntax::{free_var_tuple, Formula, Signature};
use crate::tarski::{self, compile_to_algebra, join_spec_for, Assignment, Interpretation};
use crate::worlds::{models_of, WorldSet, WorldsError};

pub const SUITES: &[&str] = &[
    "diagram",
    "folk-adequacy",
    "folk-constancy",
    "enrichment",
    "subconcept",
    "diamond",
    "reductions",
    "relalg-laws",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Corpus size: formulas, sentences, triples or relations.
    pub formulas: usize,
    /// Sampled interpretations per formula, where sampling applies.
    pub interpretations: usize,
    pub domain_size: usize,
    pub guard: u128,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 7,
            formulas: 200,
            interpretations: 20,
            domain_size: 2,
            guard: crate::worlds::DEFAULT_GUARD,
        }
    }
}

/// Enough to replay one failing case.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub formula: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub world: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<Value>,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckResult {
    fn new(name: &str) -> Self {
        CheckResult {
            name: name.to_string(),
            cases: 0,
            failures: 0,
            witness: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: SuiteConfig,
    pub checks: Vec<CheckResult>,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error(transparent)]
    Worlds(#[from] WorldsError),
    #[error("{0}")]
    Semantic(String),
}

fn semantic<E: std::fmt::Display>(e: E) -> SuiteError {
    SuiteError::Semantic(e.to_string())
}

/// Run one suite by name, or every suite for `all`.
pub fn run(name: &str, config: &SuiteConfig) -> Result<Vec<SuiteReport>, SuiteError> {
    if name == "all" {
        return SUITES.iter().map(|s| run_one(s, config)).collect();
    }
    Ok(vec![run_one(name, config)?])
}

fn run_one(name: &str, config: &SuiteConfig) -> Result<SuiteReport, SuiteError> {
    let start = Instant::now();
    let checks = match name {
        "diagram" => diagram(config)?,
        "folk-adequacy" => folk_adequacy(config)?,
        "folk-constancy" => folk_constancy(config)?,
        "enrichment" => enrichment(config)?,
        "subconcept" => subconcept(config)?,
        "diamond" => diamond(config)?,
        "reductions" => reductions(config)?,
        "relalg-laws" => relalg_laws(config)?,
        other => return Err(SuiteError::UnknownSuite(other.to_string())),
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        config: config.clone(),
        checks,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn domain(config: &SuiteConfig) -> Result<Arc<Domain>, SuiteError> {
    Ok(Arc::new(Domain::of_size(config.domain_size).map_err(semantic)?))
}

fn show(r: &Relation, d: &Domain) -> String {
    format!("{}/{}", r.render_set(d), r.arity())
}

fn witness(phi: &Formula, m: &Interpretation, left: String, right: String) -> Witness {
    Witness {
        formula: phi.to_string(),
        world: None,
        model: Some(interpretation_to_json(m)),
        left,
        right,
    }
}

fn subformulas(phi: &Formula, out: &mut Vec<Formula>) {
    out.push(phi.clone());
    match phi {
        Formula::And(l, r) => {
            subformulas(l, out);
            subformulas(r, out);
        }
        Formula::Not(f) | Formula::Exists(_, f) => subformulas(f, out),
        _ => {}
    }
}

/// Commutation of the intensional diagram, the three homomorphism laws at
/// every subformula, the algebra compiler, and the constant clauses.
pub fn diagram(config: &SuiteConfig) -> Result<Vec<CheckResult>, SuiteError> {
    let sig = fixtures::mixed_signature();
    let d = domain(config)?;
    let mut gen = Generator::new(&sig, config.seed);
    let models: Vec<Interpretation> = (0..config.interpretations).map(|_| gen.interpretation(&d)).collect();
    let corpus: Vec<Formula> = (0..config.formulas).map(|_| gen.formula()).collect();

    let mut diagram = CheckResult::new("diagram");
    let mut algebra = CheckResult::new("algebra");
    let mut conj = CheckResult::new("hom-conjunction");
    let mut neg = CheckResult::new("hom-negation");
    let mut exists = CheckResult::new("hom-exists");
    let mut constants = CheckResult::new("hom-constants");

    let xy = Formula::eq(crate::syntax::Term::var("x"), crate::syntax::Term::var("y"));
    for m in &models {
        let top = tarski::extension(m, &Formula::True).map_err(semantic)?;
        let bottom = tarski::extension(m, &Formula::falsum()).map_err(semantic)?;
        let ident = tarski::extension(m, &xy).map_err(semantic)?;
        let ok = top == Relation::truth() && bottom == Relation::falsity() && ident == relalg::identity_relation(&d);
        constants.record(ok, || witness(&xy, m, show(&ident, &d), show(&relalg::identity_relation(&d), &d)));
        let h = is(m);
        let hid = extensionalize(&h, intensional::Concept::identity()).map_err(semantic)?;
        let htruth = extensionalize(&h, intensional::Concept::truth()).map_err(semantic)?;
        constants.record(hid == ident && htruth == top, || witness(&xy, m, show(&hid, &d), show(&ident, &d)));
    }

    for phi in &corpus {
        let mut subs = Vec::new();
        subformulas(phi, &mut subs);
        let compiled = compile_to_algebra(phi);
        for m in &models {
            let (left, right) = intensional::diagram_values(phi, m).map_err(semantic)?;
            diagram.record(left == right, || witness(phi, m, show(&left, &d), show(&right, &d)));
            let alg = compiled.evaluate(m).map_err(semantic)?;
            algebra.record(alg == right, || witness(phi, m, show(&alg, &d), show(&right, &d)));
            for s in &subs {
                let whole = tarski::extension(m, s).map_err(semantic)?;
                match s {
                    Formula::And(l, r) => {
                        let spec = join_spec_for(&free_var_tuple(l), &free_var_tuple(r));
                        let joined = relalg::natural_join(
                            &tarski::extension(m, l).map_err(semantic)?,
                            &tarski::extension(m, r).map_err(semantic)?,
                            &spec,
                        )
                        .map_err(semantic)?;
                        conj.record(joined == whole, || witness(s, m, show(&joined, &d), show(&whole, &d)));
                    }
                    Formula::Not(f) => {
                        let c = relalg::complement(&tarski::extension(m, f).map_err(semantic)?, &d).map_err(semantic)?;
                        neg.record(c == whole, || witness(s, m, show(&c, &d), show(&whole, &d)));
                    }
                    Formula::Exists(x, f) => {
                        let pos = free_var_tuple(f).position(x).unwrap_or(0);
                        let p = relalg::project_out(&tarski::extension(m, f).map_err(semantic)?, pos);
                        exists.record(p == whole, || witness(s, m, show(&p, &d), show(&whole, &d)));
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(vec![diagram, algebra, conj, neg, exists, constants])
}

fn all_interpretations(sig: &Signature, d: &Domain, guard: u128) -> Result<WorldSet, SuiteError> {
    Ok(models_of(&[], sig, d, guard)?)
}

/// Tarski truth against truth in the modal model over assignments, at every
/// interpretation of `{p/1, q/2}`; each `R_x` is an equivalence relation.
pub fn folk_adequacy(config: &SuiteConfig) -> Result<Vec<CheckResult>, SuiteError> {
    let sig = fixtures::relational_signature();
    let d = domain(config)?;
    let worlds = all_interpretations(&sig, &d, config.guard)?;
    let mut gen = Generator::new(&sig, config.seed);
    let corpus: Vec<Formula> = (0..config.formulas).map(|_| gen.sentence()).collect();

    let mut adequacy = CheckResult::new("adequacy");
    let mut single_frame = CheckResult::new("single-world-frame");
    let frame = KripkeFrame::new(vec!["*".to_string()]);
    for phi in &corpus {
        for w in &worlds {
            let m = w.interpretation();
            let t = tarski::truth(m, phi).map_err(semantic)?;
            let k = kripke::truth_k(&flat(m, phi.vars()), phi).map_err(semantic)?;
            adequacy.record(t == k, || Witness {
                world: Some(w.label()),
                ..witness(phi, m, t.to_string(), k.to_string())
            });
            let g = kripke::satisfies_generalized(&frame, std::slice::from_ref(m), 0, &Assignment::new(), &phi.into())
                .map_err(semantic)?;
            single_frame.record(g == t, || Witness {
                world: Some(w.label()),
                ..witness(phi, m, g.to_string(), t.to_string())
            });
        }
    }

    let mut equivalence = CheckResult::new("accessibility-equivalence");
    let m = fixtures::m1();
    for vars in [vec!["x"], vec!["x", "y"], vec!["x", "y", "z"]] {
        let k = flat(&m, vars.clone());
        let n = k.world_count() as usize;
        for x in &vars {
            let rel = k.accessibility(x).map_err(semantic)?;
            let c = check_equivalence(&rel, n);
            equivalence.record(c.holds(), || Witness {
                formula: format!("R_{x} over V = {{{}}}", vars.join(",")),
                world: None,
                model: None,
                left: format!("{c:?}"),
                right: "equivalence".into(),
            });
        }
    }
    Ok(vec![adequacy, single_frame, equivalence])
}

/// Per-world extensions in the modal model over assignments do not depend on
/// the world and equal the Tarski extension.
pub fn folk_constancy(config: &SuiteConfig) -> Result<Vec<CheckResult>, SuiteError> {
    let sig = fixtures::mixed_signature();
    let d = domain(config)?;
    let mut gen = Generator::new(&sig, config.seed);
    let models: Vec<Interpretation> = (0..config.interpretations.min(5)).map(|_| gen.interpretation(&d)).collect();
    let corpus: Vec<Formula> = (0..config.formulas).map(|_| gen.open_formula()).collect();
    let mut constancy = CheckResult::new("constancy");
    for phi in &corpus {
        for m in &models {
            let expected = tarski::extension(m, phi).map_err(semantic)?;
            let k = flat(m, phi.vars());
            for w in k.worlds() {
                let got = kripke::per_world_extension(&k, &w, phi).map_err(semantic)?;
                constancy.record(got == expected, || Witness {
                    world: Some(d.render_tuple(&w)),
                    ..witness(phi, m, show(&got, &d), show(&expected, &d))
                });
            }
        }
    }
    Ok(vec![constancy])
}

/// Enriched satisfaction of formulas without intensional diamonds equals the
/// satisfaction of the inner model.
pub fn enrichment(config: &SuiteConfig) -> Result<Vec<CheckResult>, SuiteError> {
    let sig = fixtures::relational_signature();
    let d = domain(config)?;
    let mut gen = Generator::new(&sig, config.seed);
    let corpus: Vec<Formula> = (0..config.formulas).map(|_| gen.formula()).collect();
    let mut fol = CheckResult::new("conservative-over-fol");
    let gammas = [Vec::new(), vec![parse_formula("exists x. p(x)", &sig).map_err(semantic)?]];
    for gamma in &gammas {
        let ws = models_of(gamma, &sig, &d, config.guard)?;
        let e = EnrichedModel::over_worlds(&ws);
        for phi in &corpus {
            let vars = free_var_tuple(phi);
            let mphi: ModalFormula = phi.into();
            for (i, w) in ws.iter().enumerate() {
                let m = w.interpretation();
                for t in d.tuples(vars.len()) {
                    let g = Assignment::from_tuple(vars.iter(), &t);
                    let inner = tarski::satisfies(m, &g, phi).map_err(semantic)?;
                    let enriched = e.satisfies(i, 0, &g, &mphi).map_err(semantic)?;
                    fol.record(inner == enriched, || Witness {
                        world: Some(w.label()),
                        ..witness(phi, m, enriched.to_string(), inner.to_string())
                    });
                }
            }
        }
    }

    // multi-modal inner models: three explicit worlds, four inner models
    let mut modal = CheckResult::new("conservative-over-modal");
    let frame_worlds: Vec<String> = ["u0", "u1", "u2"].map(String::from).to_vec();
    let mut frame = KripkeFrame::new(frame_worlds.clone());
    let mut pairs = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            if rand::Rng::gen_bool(gen.rng(), 0.4) {
                pairs.push((a, b));
            }
        }
    }
    frame = frame.with_relation("r", pairs).map_err(semantic)?;
    let inner: Vec<Vec<Interpretation>> = (0..4)
        .map(|_| (0..3).map(|_| gen.interpretation(&d)).collect())
        .collect();
    let labels = (0..4).map(|i| format!("i{i}")).collect();
    let e = EnrichedModel::new(frame.clone(), labels, inner.clone()).map_err(semantic)?;
    for _ in 0..config.formulas {
        let phi = gen.modal_formula(&["r"]);
        let vars = phi.free_var_tuple();
        for (w, tables) in inner.iter().enumerate() {
            for (u, world_name) in frame_worlds.iter().enumerate() {
                for t in d.tuples(vars.len()) {
                    let g = Assignment::from_tuple(vars.iter(), &t);
                    let plain = kripke::satisfies_generalized(&frame, tables, u, &g, &phi).map_err(semantic)?;
                    let enriched = e.satisfies(w, u, &g, &phi).map_err(semantic)?;
                    modal.record(plain == enriched, || Witness {
                        formula: phi.to_string(),
                        world: Some(format!("i{w}/{world_name}")),
                        model: None,
                        left: enriched.to_string(),
                        right: plain.to_string(),
                    });
                }
            }
        }
    }
    Ok(vec![fol, modal])
}

/// The substitution law for constants, both clauses, and the sentence clause.
pub fn subconcept(config: &SuiteConfig) -> Result<Vec<CheckResult>, SuiteError> {
    let sig = fixtures::mixed_signature();
    let d = domain(config)?;
    let mut gen = Generator::new(&sig, config.seed);
    let models: Vec<Interpretation> = (0..config.interpretations.max(1)).map(|_| gen.interpretation(&d)).collect();
    let mut binary = CheckResult::new("subconcept-n>=2");
    let mut unary = CheckResult::new("subconcept-n=1");
    let mut sentence = CheckResult::new("sentence-clause");
    let half = config.formulas.div_ceil(2);
    let mut attempts = 0;
    while (binary.cases < half || unary.cases < half) && attempts < config.formulas * 50 {
        attempts += 1;
        let phi = gen.open_formula();
        let n = free_var_tuple(&phi).len();
        let bucket = if n == 1 { &mut unary } else { &mut binary };
        if bucket.cases >= half {
            continue;
        }
        let i = rand::Rng::gen_range(gen.rng(), 1..=n);
        let m = &models[bucket.cases % models.len()];
        let c = intensional::subconcept_extension(&phi, i, "c", m).map_err(semantic)?;
        bucket.record(c.holds(), || Witness {
            world: Some(format!("i={i}, c")),
            ..witness(&phi, m, show(&c.left, &d), show(&c.right, &d))
        });
        let vars = free_var_tuple(&phi);
        for t in d.tuples(vars.len()) {
            let g = Assignment::from_tuple(vars.iter(), &t);
            let ok = intensional::sentence_clause(&phi, &g, m).map_err(semantic)?;
            sentence.record(ok, || Witness {
                world: Some(d.render_tuple(&t)),
                ..witness(&phi, m, "h(I(phi/g))".into(), "tuple in h(I(phi))".into())
            });
        }
    }
    Ok(vec![binary, unary, sentence])
}

/// The intensional diamond has the same value at every world, namely the
/// union of the world extensions; intensions factor through concepts.
pub fn diamond(config: &SuiteConfig) -> Result<Vec<CheckResult>, SuiteError> {
    let sig = fixtures::relational_signature();
    let d = domain(config)?;
    let ws = all_interpretations(&sig, &d, config.guard)?;
    let e = EnrichedModel::over_worlds(&ws);
    let mut gen = Generator::new(&sig, config.seed);
    let corpus: Vec<Formula> = (0..config.formulas).map(|_| gen.formula()).collect();
    let mut constancy = CheckResult::new("diamond-constancy");
    let mut factor = CheckResult::new("intension-factorization");
    let mut eq_implies_equiv = CheckResult::new("equal-implies-equivalent");
    for (idx, phi) in corpus.iter().enumerate() {
        let union = intensional::diamond_intension(phi, &ws).map_err(semantic)?;
        let vars = free_var_tuple(phi);
        let dia = ModalFormula::int_diamond(kripke::S5_RELATION, phi.into());
        for (i, w) in ws.iter().enumerate() {
            let at = e.extension_at(i, 0, &vars, &dia).map_err(semantic)?;
            constancy.record(at == union, || Witness {
                world: Some(w.label()),
                ..witness(phi, w.interpretation(), show(&at, &d), show(&union, &d))
            });
        }
        let int = intensional::intension(phi, &ws).map_err(semantic)?;
        let u = intend(phi);
        for w in &ws {
            let via = extensionalize(&is(w.interpretation()), u).map_err(semantic)?;
            let direct = &int[&w.index()];
            factor.record(&via == direct, || Witness {
                world: Some(w.label()),
                ..witness(phi, w.interpretation(), show(&via, &d), show(direct, &d))
            });
        }
        if let Some(psi) = corpus[..idx].iter().rev().find(|p| free_var_tuple(p) == vars) {
            let equal = intensional::intensionally_equal(phi, psi, &ws).map_err(semantic)?;
            let equiv = intensional::intensionally_equivalent(phi, psi, &ws).map_err(semantic)?;
            eq_implies_equiv.record(!equal || equiv, || Witness {
                formula: format!("{phi} vs {psi}"),
                world: None,
                model: None,
                left: format!("equal={equal}"),
                right: format!("equivalent={equiv}"),
            });
        }
    }
    Ok(vec![constancy, factor, eq_implies_equiv])
}

/// Both reductions of the generalized semantics to propositional logic.
pub fn reductions(config: &SuiteConfig) -> Result<Vec<CheckResult>, SuiteError> {
    let sig = Signature::new()
        .with_predicate("p", 0)
        .and_then(|s| s.with_predicate("q", 0))
        .and_then(|s| s.with_predicate("r", 0))
        .map_err(semantic)?;
    let d = domain(config)?;
    let mut gen = Generator::new(&sig, config.seed);
    let corpus: Vec<Formula> = (0..config.formulas).map(|_| gen.propositional(5)).collect();
    let vacuous: Vec<Formula> = corpus
        .iter()
        .map(|phi| wrap_vacuously(&mut gen, phi))
        .collect();
    let mut out = Vec::new();
    for (name, kind, corpus) in [
        ("actual-world", Reduction::ActualWorld, &corpus),
        ("empty-vocabulary", Reduction::EmptyVocabulary, &vacuous),
    ] {
        let report = kripke::reduction_check(kind, &sig, &d, corpus).map_err(semantic)?;
        let mut check = CheckResult::new(name);
        for entry in &report.entries {
            check.record(entry.ok, || Witness {
                formula: entry.formula.clone(),
                world: None,
                model: None,
                left: entry.detail.clone(),
                right: "propositional value".into(),
            });
        }
        out.push(check);
    }
    Ok(out)
}

fn wrap_vacuously(gen: &mut Generator, phi: &Formula) -> Formula {
    let inner = match phi {
        Formula::And(l, r) => Formula::and(wrap_vacuously(gen, l), wrap_vacuously(gen, r)),
        Formula::Not(f) => Formula::not(wrap_vacuously(gen, f)),
        other => other.clone(),
    };
    match rand::Rng::gen_range(gen.rng(), 0..4) {
        0 => Formula::exists("x", inner),
        1 => Formula::forall("y", inner),
        _ => inner,
    }
}

/// Laws of the relational algebra on random relations of arity 0 to 3.
pub fn relalg_laws(config: &SuiteConfig) -> Result<Vec<CheckResult>, SuiteError> {
    let sig = Signature::new();
    let d = domain(config)?;
    let mut gen = Generator::new(&sig, config.seed);
    let mut involution = CheckResult::new("complement-involution");
    let mut unit = CheckResult::new("join-unit");
    let mut annihilator = CheckResult::new("join-annihilator");
    let mut arity = CheckResult::new("join-arity");
    let mut bounds = CheckResult::new("order-bounds");
    let rel_witness = |r: &Relation, left: String, right: String| Witness {
        formula: show(r, &d),
        world: None,
        model: None,
        left,
        right,
    };
    for _ in 0..config.formulas {
        let k = rand::Rng::gen_range(gen.rng(), 0..=3);
        let r = gen.relation(&d, k);
        let cc = relalg::complement(&relalg::complement(&r, &d).map_err(semantic)?, &d).map_err(semantic)?;
        involution.record(cc == r, || rel_witness(&r, show(&cc, &d), show(&r, &d)));
        let ru = relalg::natural_join(&r, &Relation::truth(), &JoinSpec::empty()).map_err(semantic)?;
        unit.record(ru == r, || rel_witness(&r, show(&ru, &d), show(&r, &d)));
        let rz = relalg::natural_join(&r, &Relation::falsity(), &JoinSpec::empty()).map_err(semantic)?;
        annihilator.record(rz.is_empty() && rz.arity() == k, || rel_witness(&r, show(&rz, &d), format!("{{}}/{k}")));
        let j = rand::Rng::gen_range(gen.rng(), 0..=3);
        let r2 = gen.relation(&d, j);
        for spec in relalg::join_specs(k, j) {
            let out = relalg::natural_join(&r, &r2, &spec).map_err(semantic)?;
            arity.record(out.arity() == k + j - spec.len(), || {
                rel_witness(&r, format!("arity {} via {spec}", out.arity()), format!("{}", k + j - spec.len()))
            });
        }
        let ok = relalg::leq(&Relation::empty(k), &r) && relalg::leq(&r, &Relation::truth());
        bounds.record(ok, || rel_witness(&r, "bounds fail".into(), "{} <= R <= {<>}".into()));
    }
    Ok(vec![involution, unit, annihilator, arity, bounds])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_small() {
        let config = SuiteConfig {
            seed: 3,
            formulas: 20,
            interpretations: 3,
            ..SuiteConfig::default()
        };
        for report in run("all", &config).unwrap() {
            assert!(report.passed(), "{report:#?}");
            assert!(report.checks.iter().all(|c| c.cases > 0), "{}", report.suite);
        }
        assert!(matches!(run("nope", &config), Err(SuiteError::UnknownSuite(_))));
    }

    #[test]
    fn reports_are_deterministic() {
        let config = SuiteConfig {
            formulas: 10,
            interpretations: 2,
            ..SuiteConfig::default()
        };
        let a = serde_json::to_string(&run("diagram", &config).unwrap()).unwrap();
        let b = serde_json::to_string(&run("diagram", &config).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
