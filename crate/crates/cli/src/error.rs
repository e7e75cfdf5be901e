use std::path::PathBuf;

use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid config: {0}")]
    Config(String),

    #[error("snapshot missing: {}", .0.display())]
    SnapshotMissing(PathBuf),

    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] argkg_core::Error),

    #[error("server error: {0}")]
    Server(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::SnapshotMissing(_) => "snapshot_missing",
            CliError::Io { .. } => "io",
            CliError::Core(e) => match e {
                argkg_core::Error::IncompatibleSnapshot { .. } => "incompatible_snapshot",
                argkg_core::Error::CorruptSnapshot(_) | argkg_core::Error::InvalidSnapshot(_) => "corrupt_snapshot",
                argkg_core::Error::NotFound { .. } => "not_found",
                argkg_core::Error::Service(_) => "service",
                argkg_core::Error::Io { .. } => "io",
                _ => "invalid_input",
            },
            CliError::Server(_) => "server",
        }
    }

    /// Process exit status: 2 for configuration problems, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            _ => 1,
        }
    }

    /// Single-line JSON error for stderr.
    pub fn to_json(&self) -> String {
        json!({ "error": { "kind": self.kind(), "message": self.to_string() } }).to_string()
    }
}

pub type CliResult<T> = Result<T, CliError>;
