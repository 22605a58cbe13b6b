use thiserror::Error;

use crate::scalar::Q;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("index {0} is outside the index set")]
    IndexOutOfRange(usize),
    #[error("instance failed validation: {0}")]
    InvalidInstance(String),
    #[error("malformed input at {path}: {msg}")]
    Parse { path: String, msg: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("character values are inconsistent on the generated subgroup: {0}")]
    InconsistentCharacter(String),
    #[error("no rational {n}-th root of {value}")]
    RootNotRepresentable { n: u64, value: Q },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("group map condition `{condition}` failed: {detail}")]
    TauCondition { condition: String, detail: String },
}

impl Error {
    pub fn parse(path: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Parse { path: path.into(), msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
