//! Composition and inversion of problem schemas over propositional structure,
//! with exact-rational model checking for two families of plane-geometry
//! problems.
//!
//! The crate is `no_std` and needs only `alloc`. File formats, report
//! serialization and the command-line front end live in `invcomp-cli`.
#![no_std]

extern crate alloc;

pub mod check;
pub mod geometry;
pub mod logic;
pub mod schema;

pub use check::{check_implication, search_joint_model, Counterexample, VerificationReport};
pub use geometry::{Configuration, Group, Interpretation, PredicateId, Rat, SamplerId};
pub use logic::{Decider, Formula, LogicError, TruthTable, Valuation};
pub use schema::{ExclusivityEvidence, GeneratingSet, ProblemSchema, SchemaError, SchemaKind};
