use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violates a precondition (non-finite input, negative time, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A truncated Fock basis is too small for the requested state or evolution.
    #[error("truncation too small: tail mass {tail:.3e} at n_trunc = {n_trunc}, retry with n_trunc >= {required}")]
    Truncation {
        n_trunc: usize,
        tail: f64,
        required: usize,
    },

    /// A numerical procedure failed its own health check (CDF construction,
    /// probe-phase calibration, integrator step control).
    #[error("numerical error: {0}")]
    Numerical(String),

    /// Malformed configuration or input text (state syntax, grid syntax, file layout).
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
