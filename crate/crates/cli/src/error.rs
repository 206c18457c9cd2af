use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}:{line}:{col}: {message}", path.display())]
    Parse { path: PathBuf, line: usize, col: usize, message: String },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Engine(#[from] stringnet::error::Error),
}

impl CliError {
    /// 3 for a broken law inside the engine, 2 for anything wrong with the
    /// input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Engine(stringnet::error::Error::LawFailure(_)) => 3,
            _ => 2,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
