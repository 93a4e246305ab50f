//! Consequence decided by enumerating every interpretation on a fixed
//! domain, with a countermodel when it fails.

use foli::fixtures::m1_signature;
use foli::parser::interpretation_to_json;
use foli::worlds::{countermodel, entails};
use foli::{parse_formula, Domain};

fn main() {
    let sig = m1_signature();
    let p = |t: &str| parse_formula(t, &sig).unwrap();
    let gamma = vec![p("forall x. (p(x) -> q(x,x))"), p("p(c)")];
    for n in [1, 2] {
        let d = Domain::of_size(n).unwrap();
        for goal in ["q(c,c)", "exists x. q(x,x)", "forall x. p(x)", "exists x. exists y. ~(x = y)"] {
            let phi = p(goal);
            let verdict = entails(&gamma, &phi, &sig, &d, 1_000_000).unwrap();
            println!("n={n} {goal:<32} {verdict}");
            if !verdict {
                let w = countermodel(&gamma, &phi, &sig, &d, 1_000_000).unwrap().unwrap();
                println!("  {} {}", w.label(), interpretation_to_json(w.interpretation()));
            }
        }
    }
}
