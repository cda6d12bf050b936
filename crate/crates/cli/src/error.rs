use thiserror::Error;

/// Failure of one run, carrying its exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Model(#[from] optoforce::Error),
    #[error("cannot write `{path}`: {source}")]
    Output {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    /// 2 for configuration errors, 3 for domain errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Output { .. } => 2,
            CliError::Model(e) => match e {
                optoforce::Error::InvalidParameter { .. }
                | optoforce::Error::InvalidRange { .. } => 2,
                _ => 3,
            },
        }
    }
}
