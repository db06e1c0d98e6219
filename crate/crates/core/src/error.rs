use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong in this crate. Integer payloads are kept as
/// decimal strings so the enum does not depend on the scalar type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a proper fraction needs at least one numerator")]
    EmptyNumerators,
    #[error("denominator must be positive, got {0}")]
    NonPositiveDenominator(String),
    #[error("numerator a_{index} = {value} is outside [0, {r})")]
    NumeratorOutOfRange {
        index: usize,
        value: String,
        r: String,
    },
    #[error("variable index {index} is outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("Hirzebruch-Jung expansion of {r}/{d} needs 0 < d < r")]
    InvalidContinuedFraction { r: String, d: String },
    #[error("continued fraction {0:?} divides by zero")]
    DivisionByZero(Vec<String>),
    #[error("dimension {n} is too small, need n >= {min}")]
    DimensionTooSmall { n: usize, min: usize },
    #[error(
        "type {0} is not Gorenstein in normalized form (unit first weight, weights summing to r)"
    )]
    NotGorenstein(String),
    #[error("type {0} is not semi-unimodular (no weight equals 1)")]
    NotSemiUnimodular(String),
    #[error("invalid two-parameter type: {0}")]
    InvalidTwoParameter(String),
    #[error("expected a case {expected} type, found case {found}")]
    WrongCase { expected: u8, found: u8 },
    #[error("point {0} is not in the overlattice")]
    NotInLattice(String),
    #[error("point {0} is not primitive in the overlattice")]
    NonPrimitive(String),
    #[error("simplex is degenerate (zero determinant)")]
    DegenerateSimplex,
    #[error("triangulation search limited to n <= {max_n} and r <= {max_r}; got n = {n}, r = {r}")]
    SearchGuard {
        n: usize,
        r: String,
        max_n: usize,
        max_r: usize,
    },
    #[error("triangulation witness failed validation: {0}")]
    InvalidWitness(String),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}
