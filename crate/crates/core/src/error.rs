use thiserror::Error;

/// Errors raised by the exact pipelines.
///
/// `Usage` errors are caller mistakes (bad arguments, mismatched variables).
/// `Consistency` errors mean an identity that must hold exactly did not,
/// which points at a bug or a genuine counterexample and is never retried.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable-list mismatch: {left:?} vs {right:?}")]
    VarMismatch { left: Vec<String>, right: Vec<String> },

    #[error("half-integer residue: odd exponent of `{var}` cannot be re-expressed")]
    HalfIntegerResidue { var: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("usage error: {0}")]
    Usage(String),

    #[error("internal-consistency failure: {0}")]
    Consistency(String),

    #[error("request exceeds budget: {0}")]
    Budget(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }
}
