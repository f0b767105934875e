use thiserror::Error;

use crate::padic::Rational;

impl Error {
    pub fn field(field: impl Into<String>, message: impl ToString) -> Self {
        Error::Field { field: field.into(), message: message.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rational {0:?}")]
    ParseRational(String),
    #[error("invalid absolute value {0:?}: expected \"0\" or \"p^e\"")]
    ParseAbs(String),
    #[error("absolute value {text:?} uses prime {found}, expected {expected}")]
    PrimeMismatch {
        text: String,
        expected: u64,
        found: String,
    },
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("unsupported prime size: {0} (primes must be below 2^64)")]
    UnsupportedPrimeSize(String),
    #[error("empty-max")]
    EmptyMax,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension {dim} exceeds the characteristic polynomial cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("need at least one vector")]
    NoVectors,
    #[error("need at least two lines")]
    NeedTwoLines,
    #[error("declared a must be nonzero")]
    ZeroA,
    #[error("declared gamma {declared} does not match measured {measured}")]
    GammaMismatch { declared: String, measured: String },
    #[error("gamma^2 = {0} is outside [0, 1]")]
    ClassicalGammaRange(Rational),
    #[error("empty search space: {0}")]
    EmptySpace(String),
    #[error("{field}: {message}")]
    Field { field: String, message: String },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
