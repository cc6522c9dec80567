//! Command errors and their process exit codes.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable, malformed or inconsistent scenario input.
    #[error("config error: {0}")]
    Config(String),

    /// Evaluation failed; carries the offending row or quantity.
    #[error("numerical fault: {0}")]
    Numerical(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        Self::Config(msg.into())
    }

    /// 1 for input problems, 2 for numerical faults.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) | Self::Io { .. } => 1,
            Self::Numerical(_) => 2,
        }
    }
}

impl From<lfvdw_core::Error> for CliError {
    fn from(e: lfvdw_core::Error) -> Self {
        use lfvdw_core::Error as E;
        match e {
            E::Stack(_) | E::InvalidParameter(_) => Self::Config(e.to_string()),
            E::Quadrature(_) | E::Domain(_) | E::SingularCavity { .. } => Self::Numerical(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
