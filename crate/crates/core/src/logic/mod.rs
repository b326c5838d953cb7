//! Propositional formulas: syntax, printing, evaluation and decision by
//! exhaustive valuation.

mod error;
mod formula;
mod parse;
mod table;

pub use error::LogicError;
pub use formula::{is_atom_name, Formula, Valuation};
pub use parse::parse;
pub use table::{
    are_equivalent, find_model, is_tautology, mutually_exclusive, truth_table, Decider,
    TruthTable, DEFAULT_ATOM_CAP,
};
