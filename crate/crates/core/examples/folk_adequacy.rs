//! First-order logic read as modal logic: worlds are assignments and each
//! quantifier is a diamond over "agrees except at x".

use foli::fixtures::m1;
use foli::kripke::{check_equivalence, flat, per_world_extension, truth_k};
use foli::{parse_formula, truth};

fn main() {
    let m = m1();
    let k = flat(&m, ["x", "y"]);
    println!("{} assignment worlds over {:?}", k.world_count(), k.vars());
    for x in ["x", "y"] {
        let r = k.accessibility(x).unwrap();
        println!("R_{x} = {r:?} equivalence={}", check_equivalence(&r, 4).holds());
    }

    for text in ["forall x. exists y. q(x,y)", "exists x. (p(x) & q(x,x))", "forall x. p(x)"] {
        let phi = parse_formula(text, m.signature()).unwrap();
        let k = flat(&m, phi.vars());
        println!("{text}: tarski={} kripke={}", truth(&m, &phi).unwrap(), truth_k(&k, &phi).unwrap());
    }

    let open = parse_formula("exists y. q(x,y)", m.signature()).unwrap();
    let k = flat(&m, open.vars());
    for w in k.worlds() {
        let ext = per_world_extension(&k, &w, &open).unwrap();
        println!("world {w:?}: {}", ext.render_set(m.domain()));
    }
}
