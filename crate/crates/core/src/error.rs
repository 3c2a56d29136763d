use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("t^2 + ({c1})t + ({c0}) is reducible over Q")]
    ReducibleField { c0: String, c1: String },
    #[error("scalars from different quadratic fields cannot be mixed")]
    FieldMismatch,
    #[error("matrix is singular")]
    Singular,
    #[error("size guard exceeded: {what} needs {needed} columns (limit {limit})")]
    Guard { what: String, needed: u128, limit: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

/// Coarse classification used by the command line front end for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    Guard,
    Precondition,
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Invalid(_)
            | Error::DimensionMismatch(_)
            | Error::ReducibleField { .. }
            | Error::FieldMismatch => ErrorKind::Validation,
            Error::Guard { .. } => ErrorKind::Guard,
            Error::DivisionByZero
            | Error::Singular
            | Error::Precondition(_)
            | Error::Verification(_) => ErrorKind::Precondition,
        }
    }
}

/// Size limits applied before any computation whose matrices scale with `(s+1)^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_columns: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_columns: 100_000 }
    }
}

impl Limits {
    pub fn new(max_columns: usize) -> Self {
        Limits { max_columns }
    }

    pub fn check(&self, what: &str, needed: u128) -> Result<()> {
        if needed > self.max_columns as u128 {
            Err(Error::Guard { what: what.to_string(), needed, limit: self.max_columns })
        } else {
            Ok(())
        }
    }

    /// Checks `base^exp` without overflowing.
    pub fn check_power(&self, what: &str, base: usize, exp: usize) -> Result<()> {
        let mut v: u128 = 1;
        for _ in 0..exp {
            v = v.saturating_mul(base as u128);
        }
        self.check(what, v)
    }
}
