//! Corpus construction, theorem-verification campaigns and report
//! handling for the group-theory kernel.

pub mod campaign;
pub mod corpus;
pub mod report;
pub mod verify;

use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("kernel error: {0}")]
    Kernel(zjkit_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    /// Unreadable or malformed input files.
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    /// Bad command-line arguments.
    #[error("{0}")]
    Usage(String),
}

impl HarnessError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        HarnessError::Io { path: path.display().to_string(), source }
    }

    /// CLI exit code bucket: file problems exit 3, usage problems exit 2.
    pub fn exit_code(&self) -> u8 {
        match self {
            HarnessError::Io { .. } | HarnessError::Parse { .. } => 3,
            HarnessError::Kernel(_) | HarnessError::Usage(_) => 2,
        }
    }
}
