use thiserror::Error;

/// Everything a command can fail with, mapped onto the documented exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{}: {0}", .0.name())]
    Library(#[from] magnus2::Error),
    #[error("i/o: {0}")]
    Io(String),
    #[error("{0} check(s) failed")]
    Failed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 64,
            CliError::Library(_) | CliError::Failed(_) => 2,
            CliError::Io(_) => 74,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
