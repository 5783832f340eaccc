use thiserror::Error;

/// Errors raised by field construction, monomial manipulation and the
/// structured block builders.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("field order {0} exceeds the supported maximum of 256")]
    TooLarge(u32),
    #[error("point count of P^{m}(F_{q}) overflows 128-bit integers")]
    Overflow { q: u32, m: u32 },
    #[error("degree {v} outside 1..={max}")]
    DegreeOutOfRange { v: u32, max: u32 },
    #[error("degree {v} does not lie in the open interval I_{r} for q = {q}")]
    IntervalMismatch { q: u32, r: u32, v: u32 },
    #[error("rightmost lift of a constant monomial")]
    ConstantMonomial,
    #[error("monomial {0:?} has no tail exponent above q - 1")]
    NotReducible(Vec<u32>),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("top pairing matrix is singular")]
    SingularP,
    #[error("operation needs r >= 2, got r = {0}")]
    BelowRecursion(u32),
    #[error("ambient dimension m must be at least 1")]
    ZeroDimension,
}

pub type Result<T> = std::result::Result<T, Error>;
