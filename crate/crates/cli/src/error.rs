//! Error type shared by loading, configuration, and report writing.

use std::io;
use std::path::Path;

use thiserror::Error;

/// Anything that can go wrong between the filesystem and the core library.
#[derive(Debug, Error)]
pub enum HarnessError {
    /// Filesystem access failed.
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    /// A file exists but its contents do not fit the expected schema.
    #[error("{path}: {detail}")]
    Format { path: String, detail: String },
    /// The assembled inputs were rejected by the core library.
    #[error(transparent)]
    Core(#[from] legibility_core::Error),
    /// A command-line argument or configuration value makes no sense.
    #[error("{0}")]
    Invalid(String),
}

impl HarnessError {
    pub fn io(path: &Path, source: io::Error) -> Self {
        HarnessError::Io { path: path.display().to_string(), source }
    }

    pub fn format(path: &Path, detail: impl Into<String>) -> Self {
        HarnessError::Format { path: path.display().to_string(), detail: detail.into() }
    }
}
