use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LogicError {
    #[error("empty input")]
    EmptyInput,
    #[error("unknown token {found:?} at position {pos}")]
    UnknownToken { pos: usize, found: char },
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("atom `{0}` has no value in the valuation")]
    MissingAtom(String),
    #[error("formula has {atoms} atoms, cap is {cap}")]
    AtomCapExceeded { atoms: usize, cap: usize },
}
