use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("snapshot format version {found} is incompatible (expected {expected})")]
    IncompatibleSnapshot { found: u32, expected: u32 },

    #[error("snapshot is corrupt: {0}")]
    CorruptSnapshot(String),

    #[error("invalid snapshot: {0}")]
    InvalidSnapshot(String),

    #[error("concept store is empty after filtering {path}")]
    EmptyConceptStore { path: PathBuf },

    #[error("concept store missing")]
    MissingConceptStore,

    #[error("unknown concept '{0}'")]
    UnknownConcept(String),

    #[error("unknown {kind} '{id}'")]
    NotFound { kind: &'static str, id: String },

    #[error("empty subset: {0}")]
    EmptySubset(String),

    #[error("camp '{0}' has no authors in scope")]
    EmptyCamp(String),

    #[error("invalid argument: {0}")]
    InvalidInput(String),

    #[error("invalid selector field '{field}': {reason}")]
    Selector { field: String, reason: String },

    #[error("embedding dimension {k} must be smaller than component size {size}")]
    EmbeddingTooLarge { k: usize, size: usize },

    #[error("annotation service error: {0}")]
    Service(String),

    #[error("malformed record: {0}")]
    Malformed(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
