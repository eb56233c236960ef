use std::io;
use std::path::Path;

use tsirelson_core::Error;

/// Everything that can stop a run, grouped by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags or flag combinations.
    #[error("{0}")]
    Usage(String),
    /// A file was read but its contents are unusable.
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    /// Reading or writing failed.
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    /// Error from the numerical core.
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub(crate) fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub(crate) fn input(path: &Path, message: impl Into<String>) -> Self {
        CliError::Input {
            path: path.display().to_string(),
            message: message.into(),
        }
    }

    /// 1 for usage and invalid input, 2 for numerical failure, 3 for I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Input { .. } => 1,
            CliError::Io { .. } => 3,
            CliError::Core(e) => match e {
                Error::NoConvergence { .. }
                | Error::MaxIterReached { .. }
                | Error::NotPsd { .. }
                | Error::NotUnitVector { .. }
                | Error::ClosedFormMismatch(_) => 2,
                _ => 1,
            },
        }
    }
}
