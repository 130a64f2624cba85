//! Error type shared by the library.

use crate::kernels::SeriesId;

/// Errors produced by the series kernels, summation engine, asymptotic
/// estimators, and verification oracles.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An index below the series' first summation index.
    #[error("index {index} is below the first index {start} of series {series}")]
    IndexBelowStart {
        series: SeriesId,
        index: u64,
        start: u64,
    },

    /// The operation does not support this series (e.g. binary splitting of
    /// the sublinear baseline, or a simplified estimate that does not exist).
    #[error("operation `{operation}` does not support series {series}")]
    UnsupportedSeries {
        series: SeriesId,
        operation: &'static str,
    },

    /// A precision context violating its invariants.
    #[error("invalid precision context: {reason}")]
    InvalidPrecision { reason: String },

    /// A domain or argument error.
    #[error("invalid argument: {reason}")]
    InvalidArgument { reason: String },

    /// Two independent computations of the same quantity disagreed. This is
    /// fatal: it indicates an internal inconsistency, never a user error.
    #[error("internal cross-check failed: {reason}")]
    CrossCheck { reason: String },

    /// Quadrature refinement levels failed to agree at the target precision.
    #[error("quadrature did not converge: {reason}")]
    NotConverged { reason: String },

    /// The arbitrary-precision arithmetic layer reported a failure
    /// (overflow, allocation, or an invalid operand reaching it).
    #[error("arbitrary-precision arithmetic failed: {0:?}")]
    Arithmetic(astro_float::Error),
}

pub type Result<T> = core::result::Result<T, Error>;
