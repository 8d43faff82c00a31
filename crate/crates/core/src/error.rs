use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("activator list is empty")]
    NoActivators,
    #[error("activator {0} appears more than once")]
    DuplicateActivator(VertexId),
    #[error("activator {vertex} is already burned at round {round}")]
    AlreadyBurned { vertex: VertexId, round: u32 },
    #[error("every vertex is already burned")]
    AllBurned,
    #[error("vertex sequence is not a simple path: {0}")]
    NotAPath(String),
    #[error("exact search exceeded its budget of {budget} expanded states")]
    BudgetExceeded { budget: u64 },
    #[error("graph too large for this operation: {n} vertices (limit {limit})")]
    TooLarge { n: usize, limit: usize },
    #[error("vertices outside the modulator do not form a cluster graph")]
    NotClusterGraph,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("sequence validation failed: {0}")]
    Validation(String),
    #[error("unknown heuristic name `{0}`")]
    UnknownHeuristic(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
