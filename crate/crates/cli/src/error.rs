use thiserror::Error;

/// Failures surfaced to the shell, one per documented exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Convergence(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Convergence(_) => "convergence",
            CliError::Domain(_) => "domain",
            CliError::Io(_) => "io",
            CliError::Internal(_) => "internal",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Convergence(_) => 2,
            CliError::Domain(_) | CliError::Io(_) | CliError::Internal(_) => 3,
        }
    }
}

impl From<loggas::Error> for CliError {
    fn from(e: loggas::Error) -> Self {
        use loggas::Error as E;
        match e {
            E::Numeric(_) | E::IntegrationFailure { .. } => CliError::Convergence(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
