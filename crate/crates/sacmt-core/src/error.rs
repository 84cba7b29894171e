//! Crate-wide error type.

use std::path::PathBuf;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error on {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A line of an input file violated the expected record format.
    #[error("{path}:{line}: {msg}")]
    Malformed {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("unknown label: {0}")]
    UnknownLabel(String),

    #[error("empty after normalization")]
    EmptyAfterNormalization,

    #[error("corpus is empty")]
    EmptyCorpus,

    #[error("sentence yields no tokens")]
    EmptySequence,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },

    /// A class cannot satisfy a sampling or splitting requirement.
    #[error("class {class}: {msg}")]
    ClassUnsatisfiable { class: String, msg: String },

    #[error("invalid configuration: {0}")]
    BadConfig(String),

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("unsupported model format version {found} (expected {expected})")]
    VersionMismatch { found: u32, expected: u32 },

    #[error("malformed model file {path}: {msg}")]
    ModelParse { path: PathBuf, msg: String },

    #[error("model shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("failed to parse {path}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn malformed(path: impl Into<PathBuf>, line: usize, msg: impl Into<String>) -> Self {
        Error::Malformed {
            path: path.into(),
            line,
            msg: msg.into(),
        }
    }
}
