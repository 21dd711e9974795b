use std::process::ExitCode;

use schatten_core::Error as CoreError;
use thiserror::Error;

/// Command failures, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("validation: {0}")]
    Validation(String),
    #[error("not_found: {0}")]
    NotFound(String),
    #[error("io: {0}")]
    Io(String),
    #[error("parse: {0}")]
    Parse(String),
    #[error("violations: {0}")]
    Violations(String),
}

impl CliError {
    /// 1 verification violations, 2 usage or validation, 3 I/O or parse.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Violations(_) => 1,
            Self::Usage(_) | Self::Validation(_) => 2,
            Self::NotFound(_) | Self::Io(_) | Self::Parse(_) => 3,
        }
    }

    pub fn to_exit_code(&self) -> ExitCode {
        ExitCode::from(self.exit_code())
    }

    /// Classifies a filesystem error on `path`.
    pub fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        let message = format!("{}: {err}", path.display());
        if err.kind() == std::io::ErrorKind::NotFound {
            Self::NotFound(message)
        } else {
            Self::Io(message)
        }
    }
}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        Self::Validation(err.to_string())
    }
}
