use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("the zero vector has no primitive form")]
    ZeroVector,

    #[error("cone is not strictly convex")]
    NotStrictlyConvex,

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("vector {0} is outside the support of the fan")]
    OutsideSupport(String),

    #[error("empty generating set")]
    EmptyIdeal,

    #[error("invalid monomial valuation: {0}")]
    InvalidValuation(String),

    #[error("face does not belong to the Newton polytope of the ideal")]
    ForeignFace,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("problem too large: {0}")]
    TooLarge(String),

    #[error("enumeration budget exceeded: {needed} points needed, cap is {cap}")]
    BudgetExceeded { needed: u128, cap: u64 },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
