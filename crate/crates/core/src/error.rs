use std::io;
use std::path::PathBuf;

use thiserror::Error;

use crate::graph::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge ({u}, {v}) at position {index} references a node outside 0..{num_nodes}")]
    OutOfRange {
        u: u64,
        v: u64,
        index: usize,
        num_nodes: u64,
    },

    #[error("edge list is not in canonical form at position {index}: {reason}")]
    NotCanonical { index: usize, reason: &'static str },

    #[error("{path}: line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },

    #[error("node id {id} does not fit the {bits}-bit node index type")]
    Capacity { id: i128, bits: u32 },

    #[error("invalid configuration: {0}")]
    Validation(String),

    #[error("seed node {id} is outside 0..{num_nodes}")]
    SeedOutOfRange { id: u64, num_nodes: u64 },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("report is malformed: {0}")]
    Report(#[from] serde_json::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    /// Short stable name of the error class, used for machine-parseable
    /// diagnostics.
    pub fn class(&self) -> &'static str {
        match self {
            Error::OutOfRange { .. } => "out-of-range",
            Error::NotCanonical { .. } => "not-canonical",
            Error::Parse { .. } => "parse",
            Error::Format { .. } => "format",
            Error::Capacity { .. } => "capacity",
            Error::Validation(_) => "validation",
            Error::SeedOutOfRange { .. } => "validation",
            Error::Io { .. } => "io",
            Error::Report(_) => "report",
        }
    }
}

/// Raised when a node id exceeds [`NodeId`].
pub(crate) fn capacity(id: i128) -> Error {
    Error::Capacity {
        id,
        bits: NodeId::BITS,
    }
}
