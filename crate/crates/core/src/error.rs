use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by a series with zero constant term")]
    DivisionByZero,

    #[error("singular input: {0}")]
    Singular(String),

    #[error("no sign change of h - target on [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },

    #[error("unknown or unsupported class: {0}")]
    Lookup(String),

    #[error("degenerate map: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
