use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    BadDegree,
    #[error("field of order {0} exceeds the supported limit 2^16")]
    FieldTooLarge(u128),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("polynomial is reducible")]
    Reducible,
    #[error("map is not simple")]
    NotSimple,
    #[error("subspace containment violated: {0}")]
    NotContained(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("inexact polynomial division (nonzero remainder)")]
    InexactDivision,
    #[error("enumeration of about {estimate} objects exceeds the budget of {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
