use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Failures surfaced by the command-line tool, each mapped to an exit code.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Numerical(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
}

impl HarnessError {
    pub const EXIT_USAGE: u8 = 1;
    pub const EXIT_DATA: u8 = 2;
    pub const EXIT_NUMERICAL: u8 = 3;

    pub fn exit_code(&self) -> u8 {
        match self {
            HarnessError::Usage(_) => Self::EXIT_USAGE,
            HarnessError::Data(_) | HarnessError::Io { .. } => Self::EXIT_DATA,
            HarnessError::Numerical(_) => Self::EXIT_NUMERICAL,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        HarnessError::Io { path: path.into(), source }
    }
}

impl From<greyfrac_core::Error> for HarnessError {
    fn from(err: greyfrac_core::Error) -> Self {
        use greyfrac_core::Error as E;
        let msg = err.to_string();
        match err {
            _ if err.is_numerical() => HarnessError::Numerical(msg),
            E::InvalidOrder(_)
            | E::InvalidHorizon
            | E::InvalidBounds(_)
            | E::InvalidConfig(_)
            | E::EmptyGrid(_) => HarnessError::Usage(msg),
            _ => HarnessError::Data(msg),
        }
    }
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;
