use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("domain error: {0}")]
    Domain(String),

    /// An identity that must hold by construction did not.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("q-adic precision exhausted: valuation not resolved below K = {cap}")]
    PrecisionExhausted { cap: u32 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::InvariantViolation(msg.into())
    }
}
