use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("value {0} exceeds the supported range")]
    OutOfRange(String),
    #[error("quotient group is infinite")]
    InfiniteGroup,
    #[error("element is not in the subgroup")]
    NotInSubgroup,
    #[error("ideal is not coprime to the modulus")]
    NotCoprime,
    #[error("enumeration budget exceeded ({0} cells)")]
    Budget(u64),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
