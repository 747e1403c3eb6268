//! CLI failure modes and their machine-readable rendering.
//!
//! Every failure exits nonzero after printing a single JSON object to
//! stderr: `{"error":{"kind":...,"message":...}}` plus a `"path"` member
//! when a file is implicated. Scripts dispatch on `kind`; humans read
//! `message`.

use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{message}")]
    Config { message: String },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("missing input {}: {hint}", path.display())]
    MissingArtifact { path: PathBuf, hint: String },
    #[error("bad artifact {}: {message}", path.display())]
    Artifact { path: PathBuf, message: String },
    #[error(transparent)]
    Ingest(#[from] glepoch_core::ingest::IngestError),
    #[error(transparent)]
    Cache(#[from] glepoch_core::ingest::CacheError),
    #[error(transparent)]
    Synthetic(#[from] glepoch_core::ingest::SyntheticError),
    #[error(transparent)]
    Epoch(#[from] glepoch_core::temporal::EpochError),
}

impl CliError {
    pub fn config(message: impl Into<String>) -> CliError {
        CliError::Config {
            message: message.into(),
        }
    }

    pub fn io(path: &Path, source: io::Error) -> CliError {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    /// A stage input that an earlier subcommand should have produced.
    pub fn missing_artifact(path: &Path, produced_by: &str) -> CliError {
        CliError::MissingArtifact {
            path: path.to_path_buf(),
            hint: format!("run `glepoch {produced_by}` first"),
        }
    }

    pub fn artifact(path: &Path, message: impl Into<String>) -> CliError {
        CliError::Artifact {
            path: path.to_path_buf(),
            message: message.into(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config { .. } => "config",
            CliError::Io { .. } => "io",
            CliError::MissingArtifact { .. } => "missing-artifact",
            CliError::Artifact { .. } => "bad-artifact",
            CliError::Ingest(_) => "ingest",
            CliError::Cache(_) => "cache",
            CliError::Synthetic(_) => "synthetic",
            CliError::Epoch(_) => "epoch",
        }
    }

    pub fn path(&self) -> Option<&Path> {
        match self {
            CliError::Io { path, .. }
            | CliError::MissingArtifact { path, .. }
            | CliError::Artifact { path, .. } => Some(path),
            _ => None,
        }
    }

    /// The stderr payload.
    pub fn to_json(&self) -> serde_json::Value {
        let mut inner = serde_json::json!({
            "kind": self.kind(),
            "message": self.to_string(),
        });
        if let Some(p) = self.path() {
            inner["path"] = serde_json::Value::String(p.display().to_string());
        }
        serde_json::json!({ "error": inner })
    }
}
