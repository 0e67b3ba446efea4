//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected coordinate length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid surface description: {0}")]
    InvalidSurface(String),

    #[error("unknown fiber id `{0}`")]
    UnknownFiberId(String),

    #[error("non-positive denominator: {0}")]
    NonPositiveDenominator(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("gcd violation: {0}")]
    GcdViolation(String),

    #[error("non-integral value where an integer is required: {0}")]
    NonIntegral(String),

    #[error("class is not spherical: chi(u,u) = {0} != 2")]
    NotSpherical(String),

    #[error("zero rank")]
    ZeroRank,

    #[error("zero vector")]
    ZeroVector,

    #[error("zero class")]
    ZeroClass,

    #[error("not coprime: gcd({0}, {1}) != 1")]
    NotCoprime(i128, i128),

    #[error("invalid wall class: {0}")]
    InvalidWallClass(String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("non-integral Hilbert length: {0}")]
    NonIntegralLength(String),

    #[error("negative Hilbert length: {0}")]
    NegativeLength(String),

    #[error("bad determinant: expected d'p - r'q = 1, got {0}")]
    BadDeterminant(String),

    #[error("slope not representable: {0}")]
    UnrepresentableSlope(String),

    #[error("length must be at least 2, got {0}")]
    LengthTooSmall(i128),

    #[error("input must be negative, got {0}")]
    NonNegativeInput(String),

    #[error("pole of the transform at t = -1")]
    Pole,

    #[error("boundary input: {0} is a wall boundary -2/n")]
    BoundaryInput(String),

    #[error("inconsistent Hodge data: {0}")]
    InconsistentHodge(String),

    #[error("infeasible class: {0}")]
    Infeasible(String),

    #[error("parse error: {0}")]
    Parse(String),
}
