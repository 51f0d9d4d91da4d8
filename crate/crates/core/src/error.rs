use thiserror::Error;

use crate::report::ResidualReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("index {index} out of range for a space of dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("parity violation at {context}: {detail}")]
    Parity { context: String, detail: String },

    #[error("inconsistent entry at {tuple:?}: {detail}")]
    Inconsistent { tuple: Vec<usize>, detail: String },

    #[error("{name} is not invertible")]
    Singular { name: String },

    #[error("precondition `{name}` failed with {} violation(s)", report.violation_count())]
    Precondition { name: String, report: Box<ResidualReport> },

    #[error("{0}")]
    NonCommuting(String),

    #[error("expression is not well-typed: {0}")]
    IllTyped(String),

    #[error("limit exceeded: {0}")]
    Limit(String),
}

impl Error {
    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }

    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn precondition(name: impl Into<String>, report: ResidualReport) -> Self {
        Error::Precondition {
            name: name.into(),
            report: Box::new(report),
        }
    }
}
