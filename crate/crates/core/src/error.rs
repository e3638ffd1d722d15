//! Error type shared across the crate.
//!
//! The variants map onto the process exit codes of the CLI: check failures
//! exit 1, invalid input exits 2, resource caps exit 3.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A verification suite or certified comparison failed.
    #[error("check failed: {0}")]
    CheckFailure(String),

    /// Malformed or out-of-contract input (config, generators, points).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A configured cap (level, truncation, partition size) was exceeded.
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    /// An internal invariant that the mathematics guarantees did not hold;
    /// this always indicates a bug and is never silently ignored.
    #[error("consistency error: {0}")]
    Consistency(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("config parse error: {0}")]
    ConfigParse(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CheckFailure(_) => 1,
            Error::InvalidInput(_) | Error::ConfigParse(_) => 2,
            Error::ResourceCap(_) => 3,
            Error::Consistency(_) | Error::Io(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
