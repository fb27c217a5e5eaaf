//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A binary input file does not match its expected layout (bad magic,
    /// length not a record multiple, ...).
    #[error("format error: {0}")]
    Format(String),

    /// Two inputs that must agree do not (e.g. image/label counts).
    #[error("consistency error: {0}")]
    Consistency(String),

    /// A partition or class-assignment request cannot be satisfied.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// Invalid configuration or arguments.
    #[error("config error: {0}")]
    Config(String),

    /// A numeric failure during training (non-finite loss or gradient).
    /// Carries the offending client and batch index when known.
    #[error("numeric failure at client {client}, batch {batch}: {detail}")]
    Numeric {
        client: usize,
        batch: usize,
        detail: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn format(msg: impl Into<String>) -> Self {
        Error::Format(msg.into())
    }

    pub fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }

    pub fn infeasible(msg: impl Into<String>) -> Self {
        Error::Infeasible(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
