use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("config key `{key}`: {reason}")]
    Config { key: String, reason: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {reason}")]
    Format { path: PathBuf, reason: String },
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("no crossing of `{observable}` inside [{lo}, {hi}]")]
    NoCrossing { observable: String, lo: f64, hi: f64 },
    #[error("engine failure in {unit}: {reason}")]
    Engine { unit: String, reason: String },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl LabError {
    pub fn config(key: impl Into<String>, reason: impl Into<String>) -> Self {
        LabError::Config { key: key.into(), reason: reason.into() }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        LabError::Io { path: path.into(), source }
    }

    /// Process exit code: 2 for invariant violations, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Invariant(_) => 2,
            _ => 1,
        }
    }
}
