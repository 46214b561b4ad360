use thiserror::Error;

/// Failure of a CLI run, carrying the process exit code it maps to.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable input or unwritable output (exit code 2).
    #[error("I/O error: {0}")]
    Io(String),
    /// Input data the estimators cannot use (exit code 3).
    #[error("data error: {0}")]
    Data(String),
    /// Invalid flags or parameter values (exit code 4).
    #[error("parameter error: {0}")]
    Param(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 2,
            CliError::Data(_) => 3,
            CliError::Param(_) => 4,
        }
    }
}

impl From<levytail::Error> for CliError {
    fn from(e: levytail::Error) -> Self {
        use levytail::Error as E;
        match e {
            E::InvalidParameter(_) | E::Accuracy { .. } => CliError::Param(e.to_string()),
            E::Degenerate(_) | E::Resolution { .. } | E::Fit(_) => CliError::Data(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
