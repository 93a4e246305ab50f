//! The `foli` command line.
//!
//! Exit codes: 0 success, 1 a check failed (including a failed entailment),
//! 2 unreadable or unparsable input, 3 semantic error such as an exceeded
//! enumeration guard.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::intensional::{self, extensionalize, intend, is};
use crate::kripke::{self, flat};
use crate::parser::{self, interpretation_to_json, parse_formula, parse_modal_formula, parse_signature, ParseError};
use crate::relalg::{Domain, Relation};
use crate::suites::{self, CheckResult, SuiteConfig, Witness};
use crate::syntax::{free_var_tuple, Formula, Signature};
use crate::tarski::{self, compile_to_algebra, Interpretation};
use crate::worlds::{models_of, WorldSet, DEFAULT_GUARD, GUARD_ENV};

const ABOUT: &str = "Finite-model semantics for first-order logic.\n\n\
Consequence and intensions are computed over every interpretation of the \
signature on ONE finite domain (--domain-size). A positive entailment verdict \
is not first-order validity.";

#[derive(Debug, Parser)]
#[command(name = "foli", version, about = ABOUT)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Domain size for enumeration; defaults to the theory's `domain` line, else 2.
    #[arg(long, global = true)]
    pub domain_size: Option<usize>,
    /// Largest number of interpretations to enumerate.
    #[arg(long, global = true, env = GUARD_ENV, default_value_t = DEFAULT_GUARD)]
    pub guard: u128,
    /// Evaluation route for `eval`.
    #[arg(long, global = true, value_enum, default_value_t = Semantics::Tarski)]
    pub semantics: Semantics,
    /// For `eval`: run every route and fail unless they agree.
    #[arg(long, global = true)]
    pub check_all: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    Tarski,
    Algebra,
    Kripke,
    Intensional,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the extension of a formula in a model, or its truth value.
    Eval {
        model: PathBuf,
        formula: String,
        /// Signature file; defaults to the model path with extension `.sig`.
        #[arg(long)]
        sig: Option<PathBuf>,
    },
    /// List the models of a theory among all interpretations.
    Models {
        sig: PathBuf,
        gamma: Option<PathBuf>,
        /// Write each model as `w<k>.model` into this directory.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Decide consequence over the fixed domain, with a countermodel on failure.
    Entails { sig: PathBuf, gamma: PathBuf, formula: String },
    /// Run a verification suite on a seeded random corpus.
    Verify {
        /// One of the suites, or `all`.
        suite: String,
        #[arg(long, default_value_t = 200)]
        formulas: usize,
        #[arg(long, default_value_t = 20)]
        interpretations: usize,
    },
    /// Per-world extensions of a formula over the models of a theory.
    Intension {
        sig: PathBuf,
        gamma: PathBuf,
        formula: String,
        /// Print the union over all worlds instead.
        #[arg(long)]
        diamond: bool,
        /// Compare with a second formula world by world.
        #[arg(long)]
        equal: Option<String>,
        /// Compare diamond values with a second formula.
        #[arg(long)]
        equiv: Option<String>,
    },
    /// Echo a formula, or every sentence of a theory, in canonical form.
    Parse {
        formula: Option<String>,
        #[arg(long)]
        sig: Option<PathBuf>,
        #[arg(long, conflicts_with = "formula")]
        theory: Option<PathBuf>,
        /// Accept modal operators.
        #[arg(long)]
        modal: bool,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Semantic(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Parse(_) => 2,
            CliError::Semantic(_) => 3,
        }
    }
}

fn semantic<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Semantic(e.to_string())
}

/// Outcome of one command. Everything here is deterministic; timing is
/// reported separately.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub passed: bool,
    pub lines: Vec<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub counts: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

impl Report {
    fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            seed: None,
            passed: true,
            lines: Vec::new(),
            counts: BTreeMap::new(),
            checks: Vec::new(),
            data: Value::Null,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_signature(path: &Path) -> Result<Signature, CliError> {
    Ok(parse_signature(&read(path)?)?)
}

fn load_model(path: &Path, sig: Option<&Path>) -> Result<Interpretation, CliError> {
    let sig_path = sig.map(Path::to_path_buf).unwrap_or_else(|| path.with_extension("sig"));
    let sig = Arc::new(load_signature(&sig_path)?);
    Ok(parser::parse_interpretation(&read(path)?, &sig)?)
}

struct Theory {
    sig: Signature,
    gamma: Vec<Formula>,
    domain: Domain,
}

fn load_theory(cli: &Cli, sig: &Path, gamma: Option<&Path>) -> Result<Theory, CliError> {
    let base = load_signature(sig)?;
    let file = match gamma {
        Some(p) => parser::parse_theory_with(&read(p)?, &base)?,
        None => parser::parse_theory_with("", &base)?,
    };
    let domain = match (cli.domain_size, file.domain) {
        (Some(n), _) => Domain::of_size(n).map_err(|e| CliError::Input(e.to_string()))?,
        (None, Some(d)) => d,
        (None, None) => Domain::of_size(2).expect("nonempty"),
    };
    let gamma = file.sentences.into_iter().map(|(_, f)| f).collect();
    Ok(Theory {
        sig: file.signature,
        gamma,
        domain,
    })
}

fn worlds_of(cli: &Cli, t: &Theory) -> Result<WorldSet, CliError> {
    models_of(&t.gamma, &t.sig, &t.domain, cli.guard).map_err(semantic)
}

fn relation_json(r: &Relation, d: &Domain) -> Value {
    if r.arity() == 0 {
        return Value::Bool(r.is_truth());
    }
    Value::from(r.iter().map(|t| d.render_tuple(t)).collect::<Vec<_>>())
}

fn evaluate(m: &Interpretation, phi: &Formula, s: Semantics) -> Result<Relation, CliError> {
    match s {
        Semantics::Tarski => tarski::extension(m, phi).map_err(semantic),
        Semantics::Algebra => compile_to_algebra(phi).evaluate(m).map_err(semantic),
        Semantics::Kripke => {
            let k = flat(m, phi.vars());
            let w = vec![0; k.vars().len()];
            kripke::per_world_extension(&k, &w, phi).map_err(semantic)
        }
        Semantics::Intensional => extensionalize(&is(m), intend(phi)).map_err(semantic),
    }
}

fn cmd_eval(cli: &Cli, model: &Path, text: &str, sig: Option<&Path>) -> Result<Report, CliError> {
    let m = load_model(model, sig)?;
    let phi = parse_formula(text, m.signature())?;
    let d = m.domain();
    let mut report = Report::new("eval");
    let value = evaluate(&m, &phi, cli.semantics)?;
    report.lines = value.render_lines(d);
    if cli.check_all {
        let reference = tarski::extension(&m, &phi).map_err(semantic)?;
        for s in [Semantics::Algebra, Semantics::Kripke, Semantics::Intensional] {
            let got = evaluate(&m, &phi, s)?;
            let mut check = CheckResult {
                name: format!("{s:?}").to_lowercase(),
                cases: 1,
                failures: 0,
                witness: None,
            };
            if got != reference {
                check.failures = 1;
                check.witness = Some(Witness {
                    formula: phi.to_string(),
                    world: None,
                    model: Some(interpretation_to_json(&m)),
                    left: got.render_set(d),
                    right: reference.render_set(d),
                });
                report.passed = false;
            }
            report.checks.push(check);
        }
        report.lines.push(if report.passed {
            "check-all: tarski, algebra, kripke and intensional agree".to_string()
        } else {
            "check-all: semantics disagree".to_string()
        });
    }
    report.data = json!({
        "formula": phi.to_string(),
        "free": free_var_tuple(&phi).to_string(),
        "semantics": cli.semantics,
        "extension": relation_json(&value, d),
    });
    Ok(report)
}

fn cmd_models(cli: &Cli, sig: &Path, gamma: Option<&Path>, dump: Option<&Path>) -> Result<Report, CliError> {
    let t = load_theory(cli, sig, gamma)?;
    let ws = worlds_of(cli, &t)?;
    let mut report = Report::new("models");
    report.lines = ws.iter().map(|w| w.label()).collect();
    report.lines.push(format!("{} of {} worlds", ws.len(), ws.total()));
    report.counts.insert("models".into(), ws.len() as u64);
    report.counts.insert("worlds".into(), ws.total().min(u64::MAX as u128) as u64);
    if let Some(dir) = dump {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
        for w in &ws {
            let path = dir.join(format!("{}.model", w.label()));
            let text = serde_json::to_string_pretty(&interpretation_to_json(w.interpretation())).expect("serializable");
            std::fs::write(&path, text + "\n").map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        }
    }
    report.data = json!({ "worlds": ws.iter().map(|w| w.label()).collect::<Vec<_>>() });
    Ok(report)
}

fn cmd_entails(cli: &Cli, sig: &Path, gamma: &Path, text: &str) -> Result<Report, CliError> {
    let t = load_theory(cli, sig, Some(gamma))?;
    let phi = parse_formula(text, &t.sig)?;
    let ws = worlds_of(cli, &t)?;
    let mut report = Report::new("entails");
    let summary = format!("{} of {} worlds, domain size {}", ws.len(), ws.total(), t.domain.len());
    match ws.first_falsifier(&phi).map_err(semantic)? {
        None => {
            report.lines.push(format!("entailed ({summary})"));
            report.data = json!({ "entailed": true });
        }
        Some(w) => {
            report.passed = false;
            let model = interpretation_to_json(w.interpretation());
            report.lines.push(format!("not entailed: countermodel {} ({summary})", w.label()));
            report.lines.push(model.to_string());
            report.data = json!({ "entailed": false, "countermodel": w.label(), "model": model });
        }
    }
    report.counts.insert("models".into(), ws.len() as u64);
    Ok(report)
}

fn cmd_verify(cli: &Cli, suite: &str, formulas: usize, interpretations: usize) -> Result<Report, CliError> {
    if suite != "all" && !suites::SUITES.contains(&suite) {
        return Err(CliError::Input(format!(
            "unknown suite `{suite}`; expected one of {}, all",
            suites::SUITES.join(", ")
        )));
    }
    let config = SuiteConfig {
        seed: cli.seed,
        formulas,
        interpretations,
        domain_size: cli.domain_size.unwrap_or(2),
        guard: cli.guard,
    };
    let mut report = Report::new("verify");
    report.seed = Some(cli.seed);
    for r in suites::run(suite, &config).map_err(semantic)? {
        for c in r.checks {
            let verdict = if c.passed() { "PASS" } else { "FAIL" };
            report.lines.push(format!("{verdict} {}/{} cases={} failures={}", r.suite, c.name, c.cases, c.failures));
            if let Some(w) = &c.witness {
                report.lines.push(format!("  witness: {}", serde_json::to_string(w).expect("serializable")));
            }
            report.passed &= c.passed();
            report.checks.push(CheckResult {
                name: format!("{}/{}", r.suite, c.name),
                ..c
            });
        }
    }
    Ok(report)
}

fn cmd_intension(
    cli: &Cli,
    sig: &Path,
    gamma: &Path,
    text: &str,
    diamond: bool,
    equal: Option<&str>,
    equiv: Option<&str>,
) -> Result<Report, CliError> {
    let t = load_theory(cli, sig, Some(gamma))?;
    let phi = parse_formula(text, &t.sig)?;
    let ws = worlds_of(cli, &t)?;
    let d = ws.domain().clone();
    let mut report = Report::new("intension");
    let mut data = serde_json::Map::new();
    if diamond {
        let u = intensional::diamond_intension(&phi, &ws).map_err(semantic)?;
        report.lines.push(u.render_set(&d));
        data.insert("diamond".into(), relation_json(&u, &d));
    } else if equal.is_none() && equiv.is_none() {
        let table = intensional::intension(&phi, &ws).map_err(semantic)?;
        let mut rows = serde_json::Map::new();
        for (k, r) in &table {
            report.lines.push(format!("w{k}\t{}", r.render_set(&d)));
            rows.insert(format!("w{k}"), relation_json(r, &d));
        }
        data.insert("intension".into(), Value::Object(rows));
    }
    if let Some(other) = equal {
        let psi = parse_formula(other, &t.sig)?;
        let eq = intensional::intensionally_equal(&phi, &psi, &ws).map_err(semantic)?;
        let same = intend(&phi) == intend(&psi);
        report.lines.push(format!("equal={eq} same-concept={same}"));
        data.insert("equal".into(), eq.into());
        data.insert("same_concept".into(), same.into());
    }
    if let Some(other) = equiv {
        let psi = parse_formula(other, &t.sig)?;
        let eq = intensional::intensionally_equivalent(&phi, &psi, &ws).map_err(semantic)?;
        report.lines.push(format!("equivalent={eq}"));
        data.insert("equivalent".into(), eq.into());
    }
    report.counts.insert("worlds".into(), ws.len() as u64);
    data.insert("concept".into(), intend(&phi).to_string().into());
    report.data = Value::Object(data);
    Ok(report)
}

fn cmd_parse(text: Option<&str>, sig: Option<&Path>, theory: Option<&Path>, modal: bool) -> Result<Report, CliError> {
    let base = match sig {
        Some(p) => load_signature(p)?,
        None => Signature::new(),
    };
    let mut report = Report::new("parse");
    if let Some(path) = theory {
        let file = parser::parse_theory_with(&read(path)?, &base)?;
        report.lines.push(file.signature.to_string());
        for (name, f) in &file.sentences {
            report.lines.push(format!("{name}: {f};"));
        }
        return Ok(report);
    }
    let text = text.ok_or_else(|| CliError::Input("give a formula or --theory".into()))?;
    let line = if modal {
        parse_modal_formula(text, &base)?.to_string()
    } else {
        parse_formula(text, &base)?.to_string()
    };
    report.lines.push(line);
    Ok(report)
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Eval { model, formula, sig } => cmd_eval(cli, model, formula, sig.as_deref()),
        Command::Models { sig, gamma, dump } => cmd_models(cli, sig, gamma.as_deref(), dump.as_deref()),
        Command::Entails { sig, gamma, formula } => cmd_entails(cli, sig, gamma, formula),
        Command::Verify {
            suite,
            formulas,
            interpretations,
        } => cmd_verify(cli, suite, *formulas, *interpretations),
        Command::Intension {
            sig,
            gamma,
            formula,
            diamond,
            equal,
            equiv,
        } => cmd_intension(cli, sig, gamma, formula, *diamond, equal.as_deref(), equiv.as_deref()),
        Command::Parse {
            formula,
            sig,
            theory,
            modal,
        } => cmd_parse(formula.as_deref(), sig.as_deref(), theory.as_deref(), *modal),
    }
}

/// Parse arguments, run, print, and return the exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let start = Instant::now();
    match execute(&cli) {
        Ok(report) => {
            if cli.json {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable"));
            } else {
                for line in &report.lines {
                    let _ = writeln!(out, "{line}");
                }
            }
            let _ = writeln!(err, "elapsed: {} ms", start.elapsed().as_millis());
            report.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

