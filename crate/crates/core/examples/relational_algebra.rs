//! The algebra on its own: joins by position pairs, complement, projection
//! and the inclusion order.

use foli::relalg::{complement, join_specs, leq, natural_join, project_out, Domain, JoinSpec, Relation};

fn main() {
    let d = Domain::new(["a", "b", "c"]).unwrap();
    let r = Relation::from_names(&d, 2, [["a", "b"], ["b", "c"], ["c", "c"]]).unwrap();
    let s = Relation::from_names(&d, 1, [["c"]]).unwrap();

    for spec in join_specs(2, 1) {
        let j = natural_join(&r, &s, &spec).unwrap();
        println!("R join{spec} S = {}", j.render_set(&d));
    }
    println!("~S = {}", complement(&s, &d).unwrap().render_set(&d));
    println!("pi-2 R = {}", project_out(&r, 2).render_set(&d));
    println!("pi-1 S = {}", project_out(&s, 1).render_set(&d));

    let unit = natural_join(&r, &Relation::truth(), &JoinSpec::empty()).unwrap();
    assert_eq!(unit, r);
    println!("S <= R: {}", leq(&s, &r));
    println!("empty <= R: {}", leq(&Relation::empty(3), &r));
}
