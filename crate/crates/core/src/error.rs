use thiserror::Error;

/// Errors raised by constructions whose inputs violate a precondition.
///
/// Law violations on otherwise well-shaped data are not errors: they are
/// reported as failing [`CheckReport`](crate::report::CheckReport) entries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("unsupported limit shape `{0}`")]
    UnsupportedShape(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("incomplete input: {0}")]
    Incomplete(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("unsupported base: {0}")]
    UnsupportedBase(String),

    #[error("invalid data: {0}")]
    Invalid(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unresolved reference `{name}` in {context}")]
    Resolution { name: String, context: String },

    #[error("validation failed for `{name}`: {reason}")]
    Validation { name: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn shape(msg: impl Into<String>) -> Error {
    Error::Shape(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

pub(crate) fn invariant(msg: impl Into<String>) -> Error {
    Error::Invariant(msg.into())
}
