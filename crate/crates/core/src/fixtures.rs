//! Small named models and signatures shared by tests and examples.

use std::sync::Arc;

use crate::relalg::{Domain, Relation};
use crate::syntax::Signature;
use crate::tarski::Interpretation;

/// `pred p/1; pred q/2; fn c/0;`
pub fn m1_signature() -> Signature {
    Signature::new()
        .with_predicate("p", 1)
        .and_then(|s| s.with_predicate("q", 2))
        .and_then(|s| s.with_function("c", 0))
        .expect("valid signature")
}

/// Domain `{a,b}`, `p = {(a)}`, `q = {(a,b),(b,b)}`, `c = a`.
pub fn m1() -> Interpretation {
    let d = Arc::new(Domain::new(["a", "b"]).expect("valid domain"));
    let p = Relation::from_names(&d, 1, [["a"]]).expect("in domain");
    let q = Relation::from_names(&d, 2, [["a", "b"], ["b", "b"]]).expect("in domain");
    Interpretation::new(Arc::new(m1_signature()), d)
        .with_predicate("p", p)
        .and_then(|m| m.with_predicate("q", q))
        .and_then(|m| m.with_constant("c", "a"))
        .expect("well-typed tables")
}

/// `pred p/1; pred q/2; pred r/0; fn c/0; fn f/1;`
pub fn mixed_signature() -> Signature {
    Signature::new()
        .with_predicate("p", 1)
        .and_then(|s| s.with_predicate("q", 2))
        .and_then(|s| s.with_predicate("r", 0))
        .and_then(|s| s.with_function("c", 0))
        .and_then(|s| s.with_function("f", 1))
        .expect("valid signature")
}

/// `pred p/1; pred q/2;`
pub fn relational_signature() -> Signature {
    Signature::new()
        .with_predicate("p", 1)
        .and_then(|s| s.with_predicate("q", 2))
        .expect("valid signature")
}

/// `pred p1/1; pred p2/1;`, read as "bought" and "sold".
pub fn bought_sold_signature() -> Signature {
    Signature::new()
        .with_predicate("p1", 1)
        .and_then(|s| s.with_predicate("p2", 1))
        .expect("valid signature")
}
