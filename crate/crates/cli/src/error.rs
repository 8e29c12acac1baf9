use graphrepair_core::Error;

/// Failures of a command, each tied to a process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Param(String),
    #[error("size cap: {0}")]
    Cap(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Param(_) => 3,
            CliError::Cap(_) => 5,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeCap(msg) => CliError::Cap(msg),
            Error::InvalidGraph(msg) => CliError::Parse(msg),
            other => CliError::Param(other.to_string()),
        }
    }
}

/// Exit code when a run completes but a verification fails.
pub const EXIT_MISMATCH: u8 = 4;
