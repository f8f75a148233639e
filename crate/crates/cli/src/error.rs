use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Input { path: PathBuf, source: latcfg::Error },
    #[error("{0}")]
    Usage(String),
    /// The input was well formed but fails the precondition being tested.
    #[error("{0}")]
    Refuted(latcfg::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Refuted(_) => 1,
            _ => 2,
        }
    }
}

impl From<latcfg::Error> for CliError {
    fn from(e: latcfg::Error) -> Self {
        use latcfg::Error::*;
        match e {
            NotAnnihilated { .. } | NotBinary { .. } | UnclassifiableCoset(_) => CliError::Refuted(e),
            other => CliError::Usage(other.to_string()),
        }
    }
}
