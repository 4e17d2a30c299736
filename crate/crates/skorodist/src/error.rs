use std::path::Path;

/// Failures of a command, each with a stable exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Unreadable or invalid input, bad flags. Exit code 2.
    #[error("{0}")]
    Input(String),
    /// An enumeration cap was hit. Exit code 3.
    #[error("{0}")]
    Budget(String),
    /// A verification ran and found violations. Exit code 1.
    #[error("{0}")]
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Check(_) => 1,
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
        }
    }

    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    /// Prefixes the message with the file it concerns.
    pub fn in_file(self, file: &Path) -> Self {
        let f = file.display();
        match self {
            CliError::Input(m) => CliError::Input(format!("{f}: {m}")),
            CliError::Budget(m) => CliError::Budget(format!("{f}: {m}")),
            CliError::Check(m) => CliError::Check(format!("{f}: {m}")),
        }
    }
}

impl From<skorodist_core::Error> for CliError {
    fn from(e: skorodist_core::Error) -> Self {
        match e {
            skorodist_core::Error::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            e => CliError::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
