use alloc::string::String;

use crate::graph::VertexId;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero in the field")]
    DivisionByZero,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("plane {plane} is not canonical for node {node}")]
    NonCanonicalPlane { plane: usize, node: usize },
    #[error("missing message from helper {0}")]
    MissingHelper(VertexId),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph error: {0}")]
    InvalidGraph(String),
    #[error("topology does not match the scheme: {0}")]
    WrongTopology(String),
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("random regular sampling gave up after {0} attempts")]
    RetriesExhausted(usize),
    #[error("protocol state incomplete: {0}")]
    Incomplete(String),
}
