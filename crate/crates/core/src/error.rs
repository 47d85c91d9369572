use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: expected two whitespace-separated tokens, found {found}")]
    Parse { line: usize, found: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("graph has {vertices} vertices, exhaustive enumeration is limited to {limit}")]
    TooLarge { vertices: usize, limit: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
