use thiserror::Error;

use crate::ordinal_cardinal::Cardinal;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ordinal: {0}")]
    Ordinal(String),
    #[error("arithmetic: {0}")]
    Arithmetic(String),
    #[error("cannot parse {input:?} at column {column}: {message}")]
    Literal { input: String, column: usize, message: String },
    #[error("profile: {0}")]
    Profile(String),
    #[error("kappa mismatch: {left} vs {right}")]
    KappaMismatch { left: Cardinal, right: Cardinal },
    #[error("lemma hypothesis: {0}")]
    Hypothesis(String),
    #[error("{0}")]
    Precondition(String),
    #[error("unrealizable: {0}")]
    Unrealizable(String),
    #[error("presentation: {0}")]
    Presentation(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("{path}:{line}:{column}: {message}")]
    File { path: String, line: usize, column: usize, message: String },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Whether the error is an engine bug rather than bad input.
    pub fn is_invariant(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
