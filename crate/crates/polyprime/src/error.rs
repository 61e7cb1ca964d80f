//! Crate-wide error type. Variants map onto the CLI exit codes: bad input
//! is exit 2, anything involving the filesystem or a damaged cache is exit 3.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on user-supplied values failed (bad gonality, non-coprime
    /// weights, unordered checkpoints, limits out of range, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A sieve cache file exists but cannot be trusted: wrong magic, truncated
    /// payload, or nonzero padding bits. Never results in a partial load.
    #[error("corrupt sieve cache: {0}")]
    CorruptCache(String),

    /// Exponent fitting was asked to run on data it cannot support.
    #[error("exponent fit failed: {0}")]
    Fit(String),

    /// The request is well-formed but exceeds what this run is allowed to
    /// spend (for example a sieve limit above the configured maximum).
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
