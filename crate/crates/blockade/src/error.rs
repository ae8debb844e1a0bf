use std::path::PathBuf;

/// Failures of the front end. Physics errors are wrapped unchanged.
#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error(transparent)]
    Core(#[from] blockade_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid value for `{key}`: {reason}")]
    Config { key: String, reason: String },
    #[error("csv: {0}")]
    Csv(String),
    #[error("unknown figure preset `{0}`")]
    UnknownPreset(String),
    #[error("{0}")]
    Usage(String),
}

impl AppError {
    pub fn config(key: impl Into<String>, reason: impl Into<String>) -> Self {
        Self::Config { key: key.into(), reason: reason.into() }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io { path: path.into(), source }
    }
}

pub type Result<T, E = AppError> = std::result::Result<T, E>;
