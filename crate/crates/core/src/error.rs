use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{value} is out of range: {reason}")]
    OutOfRange { value: String, reason: &'static str },
    #[error("modulus {0} exceeds the ring cap of 10^13")]
    ModulusTooLarge(u64),
    #[error("field of size {0} exceeds the discrete-log table bound 2^20")]
    FieldTooLarge(u128),
    #[error("{0} is not invertible")]
    NotInvertible(String),
    #[error("cyclotomic conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("expected divisibility failed: {0}")]
    Divisibility(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range(value: impl ToString, reason: &'static str) -> Error {
    Error::OutOfRange {
        value: value.to_string(),
        reason,
    }
}
