use thiserror::Error;

/// Errors raised by the library.
///
/// Each variant maps onto one CLI exit code (see [`Error::exit_code`]).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),

    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("zero Plücker coordinate at index {0}")]
    ZeroCoordinate(String),

    #[error("input is not decomposable: {0}")]
    NotDecomposable(String),

    #[error("invalid transform: {0}")]
    InvalidTransform(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A descent certificate or structural invariant failed during a run.
    /// The payload carries the offending state serialized as text.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code: 2 input error, 3 non-decomposable, 4 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotDecomposable(_) => 3,
            Error::Invariant(_) => 4,
            _ => 2,
        }
    }
}
