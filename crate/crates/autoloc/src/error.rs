use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("schema violation at `{path}`: {message}")]
    Schema { path: String, message: String },
    #[error("unknown operation `{0}`")]
    UnknownOperation(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] autoloc_core::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Every error is an input or usage problem.
    pub fn exit_code(&self) -> i32 {
        2
    }
}
