use spacelike::Error as CoreError;
use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const IO: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const DOMAIN: i32 = 3;
    pub const CONVERGENCE: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Core(CoreError::Domain(_)) => exit::DOMAIN,
            CliError::Core(CoreError::Convergence { .. }) => exit::CONVERGENCE,
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => exit::IO,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
