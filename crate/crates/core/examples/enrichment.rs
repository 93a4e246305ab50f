//! Every world of a theory becomes an inner model of one enriched model;
//! the intensional diamond then quantifies over worlds.

use std::sync::Arc;

use foli::fixtures::relational_signature;
use foli::kripke::{EnrichedModel, ModalFormula, S5_RELATION};
use foli::syntax::free_var_tuple;
use foli::{models_of, parse_formula, Domain};

fn main() {
    let sig = relational_signature();
    let d = Arc::new(Domain::of_size(2).unwrap());
    let gamma = [parse_formula("exists x. p(x)", &sig).unwrap()];
    let ws = models_of(&gamma, &sig, &d, 1_000_000).unwrap();
    let e = EnrichedModel::over_worlds(&ws);
    println!("{} inner models", e.len());

    let phi = parse_formula("p(x) & ~q(x,x)", &sig).unwrap();
    let vars = free_var_tuple(&phi);
    let dia = ModalFormula::int_diamond(S5_RELATION, (&phi).into());
    for i in [0, 1, e.len() - 1] {
        println!(
            "{}: phi {} <^dia> phi {}",
            e.labels()[i],
            e.extension_at(i, 0, &vars, &(&phi).into()).unwrap().render_set(&d),
            e.extension_at(i, 0, &vars, &dia).unwrap().render_set(&d)
        );
    }
    let exists_p = ModalFormula::from(&gamma[0]);
    println!("gamma valid in the enrichment: {}", e.valid(&exists_p).unwrap());
}
