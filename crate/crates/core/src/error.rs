use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter was outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive integration exhausted its subdivision budget before reaching tolerance.
    #[error("quadrature did not converge: estimated error {error:e} exceeds tolerance {tolerance:e}")]
    QuadratureNotConverged { error: f64, tolerance: f64 },

    /// The privacy-loss maximum could not be bracketed within the search ceiling.
    #[error("privacy-loss maximum not bracketed below x = {ceiling}")]
    MaxNotBracketed { ceiling: f64 },

    /// The privacy loss has no finite maximum (alpha = 2).
    #[error("privacy loss is unbounded for alpha = 2; the Gaussian mechanism is not pure DP")]
    UnboundedLoss,

    /// The epsilon(gamma) relation could not be inverted.
    #[error("calibration failed: {0}")]
    CalibrationFailed(String),

    /// A query referenced data the dataset does not have.
    #[error("schema error: {0}")]
    Schema(String),

    /// A query that needs at least one record was run on an empty dataset.
    #[error("empty dataset")]
    EmptyDataset,

    #[error("csv: {0}")]
    Csv(String),
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Csv(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Domain(msg()))
    }
}
