use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by library operations and the CLI front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("syntax error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("config error in field `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed JSON in {}: {message}", path.display())]
    Json { path: PathBuf, message: String },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn config(field: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
