use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Error type shared by the whole crate.
///
/// The variants mirror the failure classes the tools distinguish: bad input
/// (`Validation`, `Degenerate`), resource guards (`Capacity`, `Budget`) and
/// cross-checks that tripped (`Consistency`, which always indicates a bug
/// rather than bad input).
#[derive(Debug, Error)]
pub enum Error {
    #[error("capacity: requested {requested} exceeds the configured ceiling {ceiling}")]
    Capacity { requested: u64, ceiling: u64 },

    #[error("validation: {0}")]
    Validation(String),

    #[error("budget: {what} requires {required} but the budget is {budget}")]
    Budget {
        what: &'static str,
        required: u64,
        budget: u64,
    },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("internal consistency: {0}")]
    Consistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn degenerate(msg: impl Into<String>) -> Self {
        Error::Degenerate(msg.into())
    }

    pub fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }
}
