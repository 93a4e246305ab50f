//! A two-world frame with its own accessibility relation and a table per
//! world, evaluated with diamonds and boxes.

use std::sync::Arc;

use foli::fixtures::m1;
use foli::kripke::{is_rigid, satisfies_generalized, KripkeFrame, ModalFormula};
use foli::parser::parse_modal_formula;
use foli::relalg::Relation;
use foli::tarski::Assignment;

fn main() {
    let here = m1();
    let d = Arc::new(here.domain().clone());
    let there = here.clone().with_predicate("p", Relation::full(1, &d)).unwrap();
    let tables = vec![here.clone(), there];
    let frame = KripkeFrame::new(vec!["u".into(), "v".into()]).with_relation("r", [(0, 1), (1, 1)]).unwrap();
    println!("rigid: {}", is_rigid(&tables));

    for text in ["p(x)", "<r> p(x)", "[r] p(x)", "forall x. <r> p(x)", "<r> ~p(x)", "[r] [r] exists y. q(x,y)"] {
        let phi: ModalFormula = parse_modal_formula(text, here.signature()).unwrap();
        for (w, name) in frame.worlds().iter().enumerate() {
            let holds: Vec<&str> = d
                .elements()
                .filter(|&e| satisfies_generalized(&frame, &tables, w, &Assignment::new().with("x", e), &phi).unwrap())
                .map(|e| d.name(e))
                .collect();
            println!("{text:<26} at {name}: x in {holds:?}");
        }
    }
}
