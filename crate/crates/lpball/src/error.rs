//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors produced by the projection kernels, solvers and I/O helpers.
#[derive(Debug, Error)]
pub enum Error {
    /// Input data violates a documented precondition (non-finite entries,
    /// parameters out of range, mismatched options).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A scalar kernel was evaluated outside its domain (e.g. negative
    /// magnitude). Kernels return this instead of propagating NaN.
    #[error("domain error: {0}")]
    Domain(String),

    /// A weight vector entry is zero or negative.
    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    /// The weighted-l1 budget is zero or negative.
    #[error("invalid budget: {0}")]
    InvalidBudget(String),

    /// Two vectors/matrices that must agree in size do not.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// The operation only supports specific dimensions.
    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),

    /// An internal invariant failed. This is a bug trap, not a user error.
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// A text matrix file could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
