use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{location}: {message}")]
    Parse { location: String, message: String },
    #[error("invalid configuration: {0}")]
    Validation(String),
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },
}

#[derive(Debug, Error)]
pub enum ExplorerError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("numerical failure: {0}")]
    Numeric(#[from] nhxy_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("worker pool: {0}")]
    Pool(String),
}

impl ExplorerError {
    /// 2 for bad input, 3 for numerical failures, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            ExplorerError::Config(_) => 2,
            ExplorerError::Numeric(_) => 3,
            ExplorerError::Io(_) | ExplorerError::Pool(_) => 1,
        }
    }
}

/// Short tag for a numerical failure, used in the `status` column.
pub fn status_tag(e: &nhxy_core::Error) -> &'static str {
    use nhxy_core::Error::*;
    match e {
        ExceptionalPointProximity { .. } => "exceptional-point",
        ComplexSpectrum { .. } => "complex-spectrum",
        NonpositiveTemperature(_) => "nonpositive-temperature",
        NearDefective { .. } => "near-defective",
        ConvergenceFailure { .. } => "no-convergence",
        Overflow => "overflow",
        StepTooLarge { .. } => "step-too-large",
        DivisionByZero(_) => "division-by-zero",
        _ => "numeric-error",
    }
}
