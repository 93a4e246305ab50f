//! Formulas map to interned concepts; each model maps concepts back to
//! relations, and the round trip agrees with the Tarski extension.

use foli::fixtures::m1;
use foli::intensional::{diagram_values, extensionalize, intend, interned_count, is};
use foli::parse_formula;

fn main() {
    let m = m1();
    let h = is(&m);
    for text in ["p(x) & q(x,y)", "p(x) & q(y,z) & q(z,x)", "exists y. q(x,y)", "~p(x)", "x = y", "q(c,x)", "c = @a"] {
        let phi = parse_formula(text, m.signature()).unwrap();
        let u = intend(&phi);
        let ext = extensionalize(&h, u).unwrap();
        let (left, right) = diagram_values(&phi, &m).unwrap();
        assert_eq!(left, right);
        println!("{text}\n  concept {u} (arity {})\n  extension {}", u.arity(), ext.render_set(m.domain()));
    }
    let again = intend(&parse_formula("p(x) & q(x,y)", m.signature()).unwrap());
    println!("re-interned id {} of {} concepts", again.id(), interned_count());
}
