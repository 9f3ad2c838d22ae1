use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input: unreadable or malformed spec, unknown class, bad index.
    #[error("{0}")]
    Invalid(String),
    /// The request exceeds what exhaustive enumeration can handle.
    #[error("{0}")]
    Bound(String),
    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Bound(_) => 3,
            CliError::Output(_) => 1,
        }
    }
}

pub fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}
