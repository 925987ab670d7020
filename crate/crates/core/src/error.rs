use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("rational algebra is not split: {0}")]
    NotSplit(String),
    #[error("polynomial division is not exact")]
    InexactDivision,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("lattice error: {0}")]
    Lattice(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
