use thiserror::Error;

/// Errors raised by the biorthogonalization, sketching and Lanczos routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {context} (expected {expected}, got {actual})")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// A pivot of a (sketched) gram matrix fell below the breakdown tolerance.
    #[error("near breakdown: pivot magnitude {pivot:e} at or below tolerance {tolerance:e}")]
    NearBreakdown { pivot: f64, tolerance: f64 },

    #[error("dense linear algebra backend failure: {0}")]
    Backend(String),

    #[error("I/O error: {0}")]
    Io(String),

    /// A matrix file that could be read but not parsed.
    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(context: &'static str, expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            context,
            expected,
            actual,
        })
    }
}
