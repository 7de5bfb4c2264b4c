use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error(
        "{what}: enumeration needs about 2^{bits} steps, over the cap of 2^{cap} \
         (free dimension {free_dim})"
    )]
    CapExceeded {
        what: String,
        free_dim: usize,
        bits: u32,
        cap: u32,
    },

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("matrix is singular")]
    Singular,

    #[error("not strictly compatible: {0}")]
    NotCompatible(String),

    #[error("pole at q = {0}")]
    Pole(String),

    #[error("need at least {need} distinct primes, got {got}")]
    InsufficientPrimes { need: usize, got: usize },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}
