//! Finite-model semantics for first-order logic.
//!
//! One formula language, several evaluators that must agree:
//!
//! * [`tarski`]: satisfaction and extensions over a finite interpretation,
//!   plus compilation to the relational algebra of [`relalg`].
//! * [`kripke`]: first-order logic read as an S5 multi-modal logic over
//!   assignments, generalized frames, and the intensional enrichment.
//! * [`intensional`]: formulas mapped to interned concepts, then to
//!   relations by one extensionalization function per world.
//!
//! [`worlds`] enumerates every interpretation over a signature and a domain,
//! which gives the world space for consequence and intensions. [`suites`]
//! checks the agreement claims on seeded random corpora.

pub mod cli;
pub mod fixtures;
pub mod gen;
pub mod intensional;
pub mod kripke;
pub mod parser;
pub mod relalg;
pub mod suites;
pub mod syntax;
pub mod tarski;
pub mod worlds;

pub use parser::{parse_formula, parse_interpretation, parse_signature, parse_theory};
pub use relalg::{Domain, JoinSpec, Relation};
pub use syntax::{free_var_tuple, Formula, Signature, Term, VarTuple};
pub use tarski::{extension, satisfies, truth, Assignment, Interpretation};
pub use worlds::{entails, models_of, WorldSet};
