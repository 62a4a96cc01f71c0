use thiserror::Error;

/// Errors raised by the library. Identity checks that fail are reported as
/// findings in report structs, never through this type.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("guard exceeded: {what} = {value}, limit {limit}")]
    Guard {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("divergent series: {0}")]
    Divergent(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("orbit table coverage error: {0}")]
    Coverage(String),
    #[error("contract violation: {0}")]
    Contract(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn guard(what: &'static str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        Err(Error::Guard { what, value, limit })
    } else {
        Ok(())
    }
}
