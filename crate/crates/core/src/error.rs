use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot parse group spec `{0}`: expected `G(r,p,l)` or `Gn` with n in 4..=37")]
    Parse(String),

    #[error("invalid parameters G({r},{p},{l}): p must divide r and all parameters must be positive")]
    InvalidParameters { r: u64, p: u64, l: u64 },

    #[error("exceptional index {0} out of range 4..=37")]
    ExceptionalIndex(u64),

    #[error("group {group} is {reason}")]
    NotIrreducible { group: String, reason: String },

    #[error("{d} is not a regular number of this group")]
    NotRegular { d: u64 },

    #[error("ambient degree {m} is not divisible by the regular number {d}")]
    InvalidAmbientDegree { m: u64, d: u64 },

    #[error("Moebius function queried on incomparable pair ({a},{b})")]
    Incomparable { a: u64, b: u64 },

    #[error("coefficient a_{d} is not an integer; classification data is corrupted")]
    NonIntegralCoefficient { d: u64 },

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("group order {order} exceeds enumeration cap {cap}")]
    CapExceeded { order: u128, cap: u128 },

    #[error("malformed classification table: {0}")]
    BadTable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
