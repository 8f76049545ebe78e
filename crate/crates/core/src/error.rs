//! Error channel shared by every module.
//!
//! `Inconclusive` is kept apart from ordinary failures: a cap-bounded
//! homological computation that ran out of room must never be read as a
//! vanishing result.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or invalid input (bad matrix, wrong algebra, violated precondition).
    #[error("input error: {0}")]
    Input(String),
    /// A cap or depth bound was exhausted before the question was decided.
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    /// An invariant that the construction guarantees did not hold.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn inconclusive(msg: impl Into<String>) -> Self {
        Error::Inconclusive(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Error::Inconclusive(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
