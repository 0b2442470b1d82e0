use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failures reported by the library. Every variant is a precondition or
/// input problem; numerical residuals are returned as values, not errors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("NotCoprime: gcd({0}, {1}) != 1")]
    NotCoprime(i64, i64),

    #[error("DegenerateDenominator: {0} vanishes")]
    DegenerateDenominator(&'static str),

    #[error("invalid Bezout pair: {a}*{n} - {b}*{m} != 1")]
    InvalidBezout { a: i64, b: i64, n: i64, m: i64 },

    #[error("IndexOutOfRange: {what} = {value} not in [0, {bound})")]
    IndexOutOfRange {
        what: &'static str,
        value: i64,
        bound: i64,
    },

    #[error("DimensionMismatch: expected {expected} components, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("WrongSide: {0}")]
    WrongSide(&'static str),

    #[error("SignAssumptionViolated: {0}")]
    SignAssumptionViolated(String),

    #[error("NoHolomorphicVectors: Re(sigma) = {0} <= 0")]
    NoHolomorphicVectors(f64),

    #[error("InvalidS: Im(s) = {0} <= 0")]
    InvalidS(f64),

    #[error("InvalidSigma: Re(sigma) = {0} <= 0")]
    InvalidSigma(f64),

    #[error("RealTau: Im(tau) = 0, complex structure is degenerate")]
    RealTau,

    #[error("NonConvergent: q-sum did not settle before |q| = {0}")]
    NonConvergent(i64),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
