//! Extensions of open formulas in a small model, via satisfaction and via
//! the compiled relational-algebra term.

use foli::fixtures::m1;
use foli::tarski::{compile_to_algebra, extension};
use foli::{free_var_tuple, parse_formula};

fn main() {
    let m = m1();
    for text in ["p(x)", "q(x,y)", "p(x) & q(x,y)", "exists y. q(x,y) & ~p(y)", "~(x = y)", "forall x. exists y. q(x,y)"] {
        let phi = parse_formula(text, m.signature()).unwrap();
        let ext = extension(&m, &phi).unwrap();
        let algebra = compile_to_algebra(&phi);
        assert_eq!(algebra.evaluate(&m).unwrap(), ext);
        println!("{text:<28} {} = {}", free_var_tuple(&phi), ext.render_set(m.domain()));
        println!("{:<28} {algebra}", "");
    }
}
