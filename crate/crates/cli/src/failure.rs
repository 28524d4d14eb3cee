use std::fmt;

use sphere_casimir::Error;

/// Everything that ends a run early, mapped onto the documented exit codes.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
    Verification(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) => match e {
                Error::InvalidInput(_) | Error::CapExceeded { .. } => 2,
                Error::DegenerateGeometry(_) => 3,
                Error::SeriesStalled { .. } | Error::NonPositiveLogArgument(_) => 4,
            },
            CliError::Verification(_) => 5,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}
