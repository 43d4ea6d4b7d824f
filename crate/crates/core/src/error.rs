use alloc::string::String;

use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty number")]
    Empty,
    #[error("not a decimal or fraction")]
    Invalid,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("too many fractional digits (at most {})", crate::rational::MAX_FRACTION_DIGITS)]
    TooPrecise,
    #[error("magnitude exceeds {}", crate::rational::MAX_INPUT_MAGNITUDE)]
    OutOfRange,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Parameter outside the family's admissible range, or outside `[a, b]`
    /// for the range-preserving estimator.
    #[error("theta = {theta} is outside {allowed}")]
    Domain { theta: Rational, allowed: String },

    #[error("invalid interval: need a < b, got a = {a}, b = {b}")]
    InvalidInterval { a: Rational, b: Rational },

    /// A hypothesis of the finite-set reduction does not hold.
    #[error("{0}")]
    Hypothesis(String),

    #[error("invalid error criterion: {0}")]
    InvalidCriterion(String),

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error("unknown distribution family {0:?}")]
    UnknownFamily(String),

    #[error("n must be at least 1")]
    ZeroSampleSize,
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
