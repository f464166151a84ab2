use std::fmt;

use flatmass_core::Error as CoreError;

/// A failed command, classified by exit status.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, bad input file, parameter outside its domain.
    Usage(String),
    /// The computation itself failed or found nothing.
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numeric(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "error: {msg}"),
            CliError::Numeric(msg) => write!(f, "numeric failure: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        match err {
            CoreError::Domain { .. } | CoreError::NoOpenChannel { .. } => CliError::Usage(err.to_string()),
            CoreError::Resolution { required, .. } => {
                CliError::Numeric(format!("{err} (pass --grid {required} or narrow the energy range)"))
            }
            CoreError::ThresholdDegeneracy | CoreError::Numerical(_) => CliError::Numeric(err.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Usage(err.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
