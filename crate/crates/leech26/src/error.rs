use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    ZeroDivisor,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("unsupported argument: {0}")]
    Unsupported(String),
    #[error("not a root: {0}")]
    NotARoot(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("step budget of {0} exhausted")]
    Budget(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
