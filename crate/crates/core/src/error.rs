use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid {subject}: {detail}")]
    InvalidParameter { subject: &'static str, detail: String },

    /// A matrix failed one of its structural invariants.
    #[error("{subject} is not {invariant}: {detail}")]
    Validation {
        subject: String,
        invariant: &'static str,
        detail: String,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{what} did not converge after {iterations} iterations (last residual {residual:.3e})")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("numeric failure in {0}")]
    Numeric(String),

    #[error("degenerate Hessian {0}: determinant is zero")]
    DegenerateHessian(&'static str),

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
}

impl Error {
    pub(crate) fn invalid(subject: &'static str, detail: impl Into<String>) -> Self {
        Error::InvalidParameter {
            subject,
            detail: detail.into(),
        }
    }

    pub(crate) fn validation(
        subject: impl Into<String>,
        invariant: &'static str,
        detail: impl Into<String>,
    ) -> Self {
        Error::Validation {
            subject: subject.into(),
            invariant,
            detail: detail.into(),
        }
    }
}
