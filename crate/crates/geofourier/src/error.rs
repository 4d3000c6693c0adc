use std::path::Path;

use geofourier_core::Error as CoreError;

/// Failures of a command, each mapped to a stable exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// Malformed file; serde reports the offending field in `msg`.
    #[error("{path}:{line}:{column}: {msg}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        msg: String,
    },

    /// Well-formed file whose content breaks an invariant.
    #[error("{path}: {source}")]
    Validation {
        path: String,
        #[source]
        source: CoreError,
    },

    #[error(transparent)]
    Numeric(#[from] CoreError),

    /// The computation finished but missed its pass threshold.
    #[error("tolerance check failed: {0}")]
    Tolerance(String),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    /// 0 success, 1 usage/IO/input, 2 numerical failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Parse { .. } | CliError::Validation { .. } => 1,
            CliError::Numeric(e) => match e {
                CoreError::BadParam(_)
                | CoreError::DimensionMismatch { .. }
                | CoreError::Validation(_)
                | CoreError::DegenerateWindow(_) => 1,
                _ => 2,
            },
            CliError::Tolerance(_) => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
