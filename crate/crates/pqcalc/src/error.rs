//! Crate-wide error type. Variants map one-to-one onto the CLI exit codes
//! (domain 2, pole 3, non-convergence 4, parse 5).

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation at (or within 1e-9 of) a nonpositive-integer pole.
    #[error("pole at x = {x}")]
    Pole { x: f64 },

    /// A truncated series or product failed to meet its stopping rule.
    #[error("no convergence after {terms} terms: {context}")]
    NonConvergence { terms: usize, context: String },

    /// Malformed expression, number, or argument set.
    #[error("parse error: {0}")]
    Parse(String),

    /// Report or table destination could not be written.
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI uses for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) => 2,
            Error::Pole { .. } => 3,
            Error::NonConvergence { .. } => 4,
            Error::Parse(_) => 5,
            Error::Io(_) => 1,
        }
    }
}
