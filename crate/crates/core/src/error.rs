use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("requested accuracy {requested:e} not reached, error estimate {achieved:e}")]
    Accuracy { achieved: f64, requested: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("box side {delta} is below the sampling resolution {min}")]
    Resolution { delta: f64, min: f64 },

    #[error("regression failed: {0}")]
    Fit(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
