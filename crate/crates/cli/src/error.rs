use thiserror::Error;

/// Failures that stop a command before it produces a result document.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("computation failed: {0}")]
    Compute(#[from] toric_kring_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        1
    }
}
