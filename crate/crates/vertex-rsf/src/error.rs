use thiserror::Error;

use crate::scalar::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A denominator vanished exactly at the requested parameter point.
    #[error("singular parameter point: {0}")]
    Singular(String),
    #[error("state {state} out of range for a model with states 0..={max}")]
    StateOutOfRange { state: usize, max: usize },
    #[error("conservation violated: {0}")]
    Conservation(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("lattice with {rows} rows exceeds the limit of {limit}")]
    TooLarge { rows: usize, limit: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Maps an exact division failure to a singular-point error naming `what`.
pub(crate) fn singular(what: impl Into<String>) -> impl FnOnce(ScalarError) -> Error {
    let what = what.into();
    move |e| match e {
        ScalarError::DivisionByZero => Error::Singular(what),
        other => Error::Scalar(other),
    }
}
