//! CLI failures and their exit codes.

use std::fmt;

use frft_core::FrftError;

#[derive(Debug)]
pub enum CliError {
    /// Malformed input or an I/O failure: exit code 2.
    Input(String),
    /// A numeric precondition does not hold: exit code 3.
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Numeric(m) => f.write_str(m),
        }
    }
}

impl From<FrftError> for CliError {
    fn from(e: FrftError) -> Self {
        match e {
            FrftError::Parse(_) => CliError::Input(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Input(format!("csv output: {e}"))
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
