use dioforge_core::Error;
use thiserror::Error;

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CONSTRUCTION: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("verification failed")]
    Verification,
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Json(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Construction(_) => EXIT_CONSTRUCTION,
            CliError::Verification => EXIT_VERIFICATION,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::DegenerateParameter(_)
            | Error::ConstructionFailure { .. }
            | Error::Indeterminate(_)
            | Error::NotOnVariety(_)
            | Error::DegenerateTwist => CliError::Construction(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}
