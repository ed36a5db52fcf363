use std::fmt;
use std::process::ExitCode;

/// A failed command, carrying its exit status.
#[derive(Debug)]
pub enum CliError {
    /// Exit 2: arguments outside what the command accepts.
    Usage(String),
    /// Exit 1: a cross-check or invariant did not hold.
    Mismatch(String),
    /// Exit 1: the computation itself failed.
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Mismatch(_) | CliError::Failure(_) => ExitCode::from(1),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "invalid arguments: {m}"),
            CliError::Mismatch(m) => write!(f, "verification failed: {m}"),
            CliError::Failure(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<token_spectra::Error> for CliError {
    fn from(e: token_spectra::Error) -> Self {
        use token_spectra::Error as E;
        match e {
            E::Domain(_) | E::SizeGuard { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
