use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("inconsistent invariants: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
