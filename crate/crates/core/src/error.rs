use thiserror::Error;

use crate::histogram::Dot;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("histogram must have at least one bin")]
    NoBins,

    #[error("heights decrease at column {column}")]
    NotMonotone { column: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("a family needs at least one member")]
    EmptyFamily,

    #[error("dot {0} does not belong to any member of the family")]
    UnknownDot(Dot),

    #[error("vertex index {index} out of range for dimension {d}")]
    BadIndex { index: usize, d: usize },

    #[error("face must be nonempty")]
    EmptyFace,

    #[error("dimension {d} is too small (need at least {min})")]
    DimensionTooSmall { d: usize, min: usize },

    #[error("dimension {d} exceeds the supported maximum {max}")]
    DimensionTooLarge { d: usize, max: usize },

    #[error("{count} candidate targets exceed the enumeration budget of {budget}")]
    BudgetExceeded { count: u128, budget: u64 },

    #[error("integer overflow")]
    Overflow,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown example `{0}`")]
    UnknownExample(String),
}
