use std::path::Path;

/// Errors raised by the file formats, suites and CLI.
#[derive(Debug, thiserror::Error)]
pub enum BqError {
    #[error(transparent)]
    Core(#[from] bq_core::Error),
    #[error("I/O error on `{path}`: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid input: {0}")]
    Format(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid {name}: {reason}")]
    Usage { name: &'static str, reason: String },
}

impl BqError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        BqError::Io { path: path.display().to_string(), source }
    }
}

pub type Result<T> = std::result::Result<T, BqError>;
