use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("pole: x = {x} is a zero of (x)_{len}")]
    Pole { x: String, len: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("divergent configuration: {0}")]
    Divergent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
