//! Error type shared across the library.

use thiserror::Error;

/// Errors reported by library operations.
///
/// Domain errors (bad indices, wrong residue class, non-coprime arguments)
/// are distinguished from truncation errors (an operation whose result would
/// carry no valid coefficients at the available order). Internal arithmetic
/// inconsistencies — e.g. a Kloosterman sum with a non-negligible imaginary
/// part — are bugs and panic instead of returning a variant.
#[derive(Debug, Error)]
pub enum Error {
    /// An index is outside the residue class or sign range an operation requires.
    #[error("invalid index m={m}: {reason}")]
    InvalidIndex { m: i64, reason: &'static str },

    /// Arguments that must be coprime are not.
    #[error("arguments d={d}, c={c} are not coprime")]
    NotCoprime { d: i64, c: i64 },

    /// A parameter is outside its domain (non-positive argument, bad prime, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The requested operation would produce a series with no valid coefficients.
    #[error("truncation exhausted: {0}")]
    TruncationExhausted(String),

    /// Residue classes of two series are incompatible for the requested operation.
    #[error("incompatible residues {a} and {b} for {op}")]
    ResidueMismatch { a: u8, b: u8, op: &'static str },

    /// A numeric series failed to converge within the configured budget
    /// in a context where an unconverged value cannot be used.
    #[error("series did not converge within c_max={c_max} (tail estimate {tail})")]
    NotConverged { c_max: u64, tail: String },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
