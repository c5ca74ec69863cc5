//! Error type shared across the crate.

use thiserror::Error;

/// Errors surfaced by the exact-arithmetic, counting, character, and census
/// layers. Everything here is either a caller mistake (bad input, guard
/// tripped) or an internal cross-check failure that signals a bug.
#[derive(Debug, Error)]
pub enum Error {
    /// Denominator of a rational function is the zero polynomial.
    #[error("division by the zero polynomial")]
    DivisionByZero,

    /// q ↦ q/(q−1) sent the denominator to the zero function.
    #[error("substitution q -> q/(q-1) degenerates the denominator")]
    DegenerateSubstitution,

    /// Expansion at q = 0 requested for a function with a pole there.
    #[error("rational function has a pole at q = 0")]
    PoleAtZero,

    /// A desk-scale guard was exceeded (partition size, character degree, ...).
    #[error("argument out of supported range: {0}")]
    OutOfRange(String),

    /// Two class functions on different symmetric groups were combined.
    #[error("class functions live on S_{0} and S_{1}")]
    DimensionMismatch(u32, u32),

    /// A coefficient that must be an integer came out fractional.
    #[error("integrality violation: {0}")]
    IntegralityViolation(String),

    /// Two independent computations of the same quantity disagree.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    /// Field size not in the built-in moduli table.
    #[error("unsupported field size q = {0}")]
    UnsupportedField(u32),

    /// Enumeration would exceed the desk-scale guard.
    #[error("enumeration too large: {0}")]
    TooLarge(String),

    /// A user-supplied statistic does not cover every partition of d.
    #[error("bad statistic: {0}")]
    BadStatistic(String),

    /// Malformed textual input (rational, partition, ...).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
