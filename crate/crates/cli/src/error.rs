use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("cannot read config file {path}: {source}")]
    ConfigFile {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed config file: {0}")]
    ConfigJson(#[from] serde_json::Error),

    #[error("invalid expression: {0}")]
    Expression(String),

    #[error("malformed report: {0}")]
    Report(String),

    #[error(transparent)]
    Core(#[from] pvtsi::Error),
}

impl CliError {
    /// 2 for anything the user can fix in the input, 3 for numerical failures.
    pub fn exit_code(&self) -> u8 {
        use pvtsi::Error as E;
        match self {
            CliError::Core(e) => match e {
                E::InvalidParameter(_)
                | E::Unsupported(_)
                | E::OutOfInterval { .. }
                | E::NonIntegrableEndpoint(_)
                | E::LevelTooHigh { .. }
                | E::UnsupportedLevel { .. }
                | E::UnknownExample(_) => 2,
                _ => 3,
            },
            _ => 2,
        }
    }
}
