use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("empty input")]
    EmptyInput,
    #[error("empty semigroup product")]
    EmptyProduct,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("letter `{0}` has no assigned image")]
    UnassignedLetter(String),
    #[error("degree bound {bound} exceeded (needed {needed})")]
    DegreeBound { bound: usize, needed: usize },
    #[error("character is not invertible: {0}")]
    NotInvertible(String),
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("decorated input is not supported here: {0}")]
    Decorated(String),
    #[error("semigroup table: {0}")]
    Table(String),
}

pub type Result<T> = std::result::Result<T, Error>;
