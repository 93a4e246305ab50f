//! Seeded formula and model generation, and the verification suites that
//! run on it.

use std::sync::Arc;

use foli::fixtures::mixed_signature;
use foli::gen::Generator;
use foli::suites::{run, SuiteConfig};
use foli::Domain;

fn main() {
    let sig = mixed_signature();
    let mut gen = Generator::new(&sig, 42);
    for _ in 0..5 {
        println!("{}", gen.formula());
    }
    let m = gen.interpretation(&Arc::new(Domain::of_size(2).unwrap()));
    println!("q = {}", m.predicate("q").unwrap().render_set(m.domain()));

    let config = SuiteConfig { formulas: 100, ..SuiteConfig::default() };
    for report in run("all", &config).unwrap() {
        for check in &report.checks {
            println!("{:<16} {:<28} {}/{}", report.suite, check.name, check.cases - check.failures, check.cases);
        }
    }
}
