use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// A state outside the domain where a law is defined (e.g. A ≤ 0 for blood flow).
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{0}")]
pub struct DomainError(pub String);

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("domain error at {location}: {source}")]
    Domain {
        location: String,
        #[source]
        source: DomainError,
    },

    #[error("solution blew up at step {step} (max |coefficient| = {max_coeff:e})")]
    BlowUp { step: usize, max_coeff: f64 },

    #[error("Adams-Bashforth step requested without a previous residual")]
    MissingHistory,

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn domain(location: impl Into<String>, source: DomainError) -> Self {
        Error::Domain {
            location: location.into(),
            source,
        }
    }
}
