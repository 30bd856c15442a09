use std::path::PathBuf;

use thiserror::Error;

/// Front-end failures, each tied to one exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: Box<CliError>,
    },

    #[error("{0}")]
    Infeasible(String),

    #[error("self-test failed: {0}")]
    SelftestFailed(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) | CliError::Io { .. } => 2,
            CliError::File { source, .. } => source.exit_code(),
            CliError::Infeasible(_) => 3,
            CliError::SelftestFailed(_) => 4,
        }
    }

    pub fn in_file(self, path: impl Into<PathBuf>) -> Self {
        CliError::File {
            path: path.into(),
            source: Box::new(self),
        }
    }
}

impl From<rbc_core::Error> for CliError {
    fn from(e: rbc_core::Error) -> Self {
        use rbc_core::Error as E;
        match e {
            E::Usage(_) => CliError::Usage(e.to_string()),
            E::RstarInfeasible { .. } | E::BudgetExceeded { .. } => CliError::Infeasible(e.to_string()),
            E::Validation(_) | E::Factorization { .. } | E::ModelAssumption(_) | E::Parse(_) => {
                CliError::Input(e.to_string())
            }
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
