use thiserror::Error;

/// Errors produced by the geometry, tree and ratio routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Inputs outside the region where a formula is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed scan/optimizer configuration.
    #[error("invalid configuration: {0}")]
    Config(String),
    /// Bad raw input (point lists, non-finite values).
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn config<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Config(msg.into()))
}
