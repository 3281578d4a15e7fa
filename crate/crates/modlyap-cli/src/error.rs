use thiserror::Error;

pub const EXIT_COMPUTE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Compute(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Compute(_) | CliError::Io(_) => EXIT_COMPUTE,
            CliError::Verification(_) => EXIT_VERIFY,
        }
    }
}

impl From<modlyap::Error> for CliError {
    fn from(e: modlyap::Error) -> Self {
        match e {
            modlyap::Error::Parse(m) => CliError::Usage(m),
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Compute(format!("csv: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
