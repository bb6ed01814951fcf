use std::path::PathBuf;

use thiserror::Error;

use crate::statefile::ParseError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid state: {0}")]
    InvalidState(tritangle::Error),
    #[error("{0}: this command needs a pure state, not a density matrix")]
    NotPure(PathBuf),
    #[error("{0}")]
    Compute(#[from] tritangle::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } | CliError::Io { .. } => 2,
            CliError::InvalidState(_) => 3,
            CliError::NotPure(_) => 4,
            CliError::Compute(_) => 1,
        }
    }
}
