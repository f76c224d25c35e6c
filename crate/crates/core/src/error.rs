use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("edge {edge} is a self-loop at vertex {vertex}")]
    SelfLoop { edge: usize, vertex: usize },
    #[error("edge {edge} has endpoint {vertex} out of range (vertex count {vertex_count})")]
    EndpointOutOfRange {
        edge: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("vertex {vertex} out of range (vertex count {vertex_count})")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("edge index {edge} out of range (edge count {edge_count})")]
    EdgeOutOfRange { edge: usize, edge_count: usize },
    #[error("invalid {what}: {value}")]
    InvalidDimension { what: &'static str, value: usize },
    #[error("vertex set is empty")]
    EmptyVertexSet,
    #[error("edge set is empty")]
    EmptyEdgeSet,
    #[error("contracted edges do not form a connected subgraph")]
    DisconnectedCore,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("spanning tree count exceeds cap {cap}")]
    TooManyTrees { cap: usize },
    #[error("edge set is not a spanning tree")]
    NotSpanningTree,
    #[error("tree is not fair: node {node} uses {count} edges of its pair")]
    NotFair { node: usize, count: usize },
    #[error("expected {expected} weights, found {found}")]
    WeightCount { expected: usize, found: usize },
    #[error("weight of edge {edge} must be positive and finite, found {value}")]
    NonPositiveWeight { edge: usize, value: f64 },
    #[error("1-density needs at least two vertices")]
    SingleVertex,
    #[error("graph has {vertices} vertices, brute-force bound is {bound}; use the FEU solvers instead")]
    TooLarge { vertices: usize, bound: usize },
    #[error("did not converge after {iterations} iterations (residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("point set is empty")]
    EmptyPointSet,
    #[error("invalid argument `{field}`: {message}")]
    InvalidArgument { field: String, message: String },
    #[error("{field}: {message}")]
    Format { field: String, message: String },
    #[error("curve construction failed: {0}")]
    Curve(String),
    #[error("linear program failed: {0}")]
    Lp(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::InvalidArgument {
            field: field.into(),
            message: message.into(),
        }
    }
}
