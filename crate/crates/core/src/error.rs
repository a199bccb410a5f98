use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("config error at {}: {msg}", if .pointer.is_empty() { "document root" } else { .pointer.as_str() })]
    Config { pointer: String, msg: String },

    #[error("cannot read {0}")]
    Io(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("index out of range: {0}")]
    Range(String),

    #[error("shape mismatch: {0}")]
    Shape(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }

    pub(crate) fn config(pointer: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Config { pointer: pointer.into(), msg: msg.into() }
    }

    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
