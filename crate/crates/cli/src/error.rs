use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Input JSON does not match the datum schema; `path` is a JSON path
    /// such as `$.S[1][0].coeffs[2]`.
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),
    #[error(transparent)]
    Library(moddata::Error),
}

impl CliError {
    pub fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Schema {
            path: path.into(),
            message: message.into(),
        }
    }

    /// 2 for bad input or arguments, 3 for resource bounds, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Schema { .. } | CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::ResourceBound(_) => 3,
            CliError::Library(moddata::Error::TooLarge { .. }) => 3,
            CliError::Library(_) => 1,
        }
    }
}

impl From<moddata::Error> for CliError {
    fn from(e: moddata::Error) -> Self {
        match e {
            moddata::Error::TooLarge { order, bound } => CliError::ResourceBound(format!(
                "group of order {} exceeds the bound {} (raise --max-group-order)",
                order, bound
            )),
            other => CliError::Library(other),
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
