use std::io;

/// Errors produced by table construction, factorization, and enumeration.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A parameter is outside the documented domain of an operation.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An input triple violates A+B+C = 0, ABC != 0, or gcd(A,B,C) = 1.
    #[error("invalid triple: {0}")]
    InvalidTriple(String),

    /// The sieve does not reach far enough for the requested operation.
    #[error("prime table limit {limit} too small: need coverage up to {needed}")]
    TableTooSmall { needed: u64, limit: u64 },

    /// Trial division exhausted the sieve with a cofactor that cannot be
    /// certified prime (it exceeds limit^2).
    #[error(
        "cannot fully factor {n}: cofactor {cofactor} exceeds the certification \
         range of the sieve (limit {limit})"
    )]
    IncompleteFactorization { n: i128, cofactor: u64, limit: u64 },

    /// Sieve allocation failed; carries the attempted size.
    #[error("allocation of {bytes} bytes for a sieve up to {limit} failed")]
    Resource { limit: u64, bytes: u128 },

    /// An intermediate exact quantity exceeded the widest fixed-size integer.
    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    /// I/O failure while draining an enumeration into a sink.
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
