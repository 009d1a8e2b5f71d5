use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: self-loop on vertex `{token}`")]
    SelfLoop { line: usize, token: String },

    #[error("vertex {vertex} out of range (graph has {n} vertices)")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("unknown graph name `{0}`")]
    UnknownGraph(String),

    #[error("{what}: size {size} exceeds exact limit {limit}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("{what}: search budget of {budget} steps exhausted")]
    BudgetExceeded { what: &'static str, budget: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
