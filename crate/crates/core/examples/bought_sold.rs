//! Two predicates forced to agree in every admissible world have equal
//! intensions, yet remain distinct concepts.

use std::sync::Arc;

use foli::fixtures::bought_sold_signature;
use foli::intensional::{diamond_intension, intend, intension, intensionally_equal, intensionally_equivalent};
use foli::{models_of, parse_formula, Domain};

fn main() {
    let sig = bought_sold_signature();
    let d = Arc::new(Domain::of_size(2).unwrap());
    let bought = parse_formula("p1(x)", &sig).unwrap();
    let sold = parse_formula("p2(x)", &sig).unwrap();
    let same = parse_formula("forall x. (p1(x) <-> p2(x))", &sig).unwrap();

    for (name, gamma) in [("constrained", vec![same]), ("free", vec![])] {
        let ws = models_of(&gamma, &sig, &d, 1_000_000).unwrap();
        println!("{name}: {} worlds", ws.len());
        for (w, r) in intension(&bought, &ws).unwrap() {
            println!("  w{w}: {}", r.render_set(&d));
        }
        println!(
            "  equal={} equivalent={} diamond={}",
            intensionally_equal(&bought, &sold, &ws).unwrap(),
            intensionally_equivalent(&bought, &sold, &ws).unwrap(),
            diamond_intension(&bought, &ws).unwrap().render_set(&d)
        );
    }
    println!("concepts: {} vs {}", intend(&bought), intend(&sold));
}
