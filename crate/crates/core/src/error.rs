use thiserror::Error;

use crate::report::Report;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("value {value} at {field} is out of range for modulus {modulus}")]
    OutOfRange {
        field: String,
        value: i64,
        modulus: u64,
    },

    #[error("cells are not composable: t(a) = {left_target:?} but s(b) = {right_source:?}")]
    NotComposable {
        left_target: Vec<u64>,
        right_source: Vec<u64>,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("{what} is not a free Z/{modulus}-module")]
    NotFree { what: String, modulus: u64 },

    #[error("input violates its axioms\n{0}")]
    Invalid(Box<Report>),

    #[error("integrity check failed\n{0}")]
    Integrity(Box<Report>),

    #[error("candidate count {count} exceeds cap {cap}")]
    CapExceeded { count: u128, cap: u128 },

    #[error("chaining mismatch: {0}")]
    Chain(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    /// The report attached to a validation or integrity failure, if any.
    pub fn report(&self) -> Option<&Report> {
        match self {
            Error::Invalid(r) | Error::Integrity(r) => Some(r),
            _ => None,
        }
    }
}

/// Turns a failing report into `Error::Invalid`.
pub(crate) fn require(report: Report) -> Result<()> {
    if report.passed() {
        Ok(())
    } else {
        Err(Error::Invalid(Box::new(report)))
    }
}
