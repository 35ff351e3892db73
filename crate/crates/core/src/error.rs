use thiserror::Error;

use crate::graph::Edge;
use crate::tree::TreeDefect;
use crate::verify::Violation;
use crate::VertexId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex count must be at least {min}, got {got}")]
    TooFewVertices { min: usize, got: usize },

    #[error("bipartite sides must satisfy 2 <= m1 <= m2, got m1={m1} m2={m2}")]
    InvalidBipartiteSizes { m1: usize, m2: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),

    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },

    #[error("a terminal set needs at least 2 vertices, got {got}")]
    TooFewTerminals { got: usize },

    #[error("vertex {0} is not in the tree")]
    MissingVertex(VertexId),

    #[error("tree {index} is not a valid Steiner tree: {defect}")]
    MalformedTree { index: usize, defect: TreeDefect },

    #[error("the new terminal set must be a subset of the old one")]
    NotASubset,

    #[error("terminal set must lie entirely within one side of the bipartition")]
    TerminalsNotOneSided,

    #[error("terminal set must meet both sides of the bipartition")]
    TerminalsNotMixed,

    #[error("branch precondition not met: {0}")]
    WrongBranch(&'static str),

    #[error("degenerate subgraph: {0}")]
    DegenerateSubgraph(&'static str),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("constructed family failed verification: {0}")]
    ConstructionFailedVerification(Violation),

    #[error("search budgets must be positive")]
    InvalidSearchConfig,

    #[error("host too large for the exact solver: {0}")]
    HostTooLarge(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}
