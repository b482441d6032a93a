use thiserror::Error;

/// Errors raised while configuring a search or loading an instance.
///
/// Search outcomes such as running out of budget or exhausting the space are
/// reported through [`Status`](crate::Status), not through this type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid instance: {0}")]
    Validation(String),
    #[error("invalid weight: {0}")]
    Weight(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("no solution")]
    NoSolution,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
