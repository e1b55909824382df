use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition {0}")]
    InvalidPartition(String),
    #[error("partition {partition} is not admissible for epsilon = {eps}")]
    NotAdmissible { partition: String, eps: i8 },
    #[error("invalid algebra parameters: {0}")]
    InvalidAlgebra(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid Levi datum: {0}")]
    Levi(String),
    #[error("io error at {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
