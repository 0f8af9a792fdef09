use thiserror::Error;

use crate::format::FormatError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid instance at {0}")]
    Format(#[from] FormatError),
    #[error(transparent)]
    Domain(colorcut_core::Error),
    /// An invariant that a theorem guarantees did not hold.
    #[error("verification failed: {0}")]
    Verification(String),
}

impl From<colorcut_core::Error> for CliError {
    fn from(e: colorcut_core::Error) -> CliError {
        if e.is_verification() {
            CliError::Verification(e.to_string())
        } else {
            CliError::Domain(e)
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 2,
            _ => 1,
        }
    }
}
