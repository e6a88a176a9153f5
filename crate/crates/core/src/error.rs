use thiserror::Error;

/// Errors shared by every layer of the crate.
///
/// All counting is exact: an operation whose result would not fit the
/// 128-bit integers it is computed in reports [`Error::Overflow`] rather
/// than wrapping.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(u32, u32),

    #[error("dimension {0} outside 1..=64")]
    InvalidDimension(u32),

    #[error("{what}: guard exceeded ({actual} > {limit})")]
    GuardExceeded {
        what: &'static str,
        limit: u64,
        actual: u64,
    },

    #[error("exact arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("empty point set")]
    EmptySet,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no valid ball radius for n={n}, d={d}, r={r}: {side}")]
    NoValidRadius { n: u64, d: u32, r: u32, side: String },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
