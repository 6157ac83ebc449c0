use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FmkError {
    #[error("field: {0}")]
    Field(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("outside the domain: {0}")]
    Domain(String),
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("serialization: {0}")]
    Serde(String),
}

pub type Result<T> = std::result::Result<T, FmkError>;
