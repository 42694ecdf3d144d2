use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("edge density is undefined for a graph with no vertices")]
    UndefinedDensity,

    #[error("hyperedge {edge:?} does not have exactly {k} distinct vertices")]
    BadHyperedge { edge: Vec<usize>, k: usize },

    #[error("uniformity mismatch: pattern is {pattern}-uniform, target is {target}-uniform")]
    UniformityMismatch { pattern: usize, target: usize },

    #[error("enumeration budget of {budget} states exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("graph is not threshold")]
    NotThreshold,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
