use std::path::PathBuf;

use thiserror::Error;

use crate::intpoly::Rational;

/// Errors raised by the arithmetic, isolation and catalog layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("polynomial {0} is not canonical (content 1, positive leading coefficient)")]
    NonCanonical(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Sturm counting needs endpoints that are not roots; the caller has to perturb.
    #[error("interval endpoint {0} is a root")]
    EndpointIsRoot(Rational),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
