use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("geometry mismatch: D={left} vs D={right}")]
    GeometryMismatch { left: u32, right: u32 },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("index out of range: {factor} needs index <= {d}")]
    IndexOutOfRange { factor: String, d: u32 },

    #[error("cycle is not homogeneous")]
    NotHomogeneous,

    #[error("insufficient data: arity {needed} required, family has {available} (partial j = {partial:?})")]
    InsufficientArity {
        needed: usize,
        available: usize,
        partial: Vec<u32>,
    },

    #[error("family inconsistent: {0}")]
    FamilyInconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
