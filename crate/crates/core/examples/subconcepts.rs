//! Substituting a constant for a free variable selects and projects the
//! extension.

use foli::fixtures::m1;
use foli::intensional::{subconcept_extension, sentence_clause};
use foli::tarski::Assignment;
use foli::parse_formula;

fn main() {
    let m = m1();
    for (text, i) in [("q(x,y)", 1), ("q(x,y)", 2), ("p(x)", 1), ("exists z. q(x,z) & q(z,y)", 2)] {
        let phi = parse_formula(text, m.signature()).unwrap();
        let check = subconcept_extension(&phi, i, "c", &m).unwrap();
        println!(
            "{text} with c at position {i}: {} = {} ({})",
            check.left.render_set(m.domain()),
            check.right.render_set(m.domain()),
            check.holds()
        );
    }
    let phi = parse_formula("q(x,y)", m.signature()).unwrap();
    let g = Assignment::from_tuple(["x", "y"], &[0, 1]);
    println!("sentence clause at (a,b): {}", sentence_clause(&phi, &g, &m).unwrap());
}
