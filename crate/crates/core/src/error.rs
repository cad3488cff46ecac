use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error(transparent)]
    Validation(#[from] ValidationError),

    #[error("instance too large for exhaustive search: n = {n}, limit is {limit}")]
    TooLarge { n: usize, limit: usize },
}

/// Reasons a clustering fails to be a partition of a graph's vertex set.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValidationError {
    #[error("vertex {vertex} in cluster {cluster} is out of range (graph has {vertex_count} vertices)")]
    OutOfRange {
        vertex: VertexId,
        cluster: usize,
        vertex_count: usize,
    },

    #[error("vertex {vertex} appears in both cluster {first} and cluster {second}")]
    Overlap {
        vertex: VertexId,
        first: usize,
        second: usize,
    },

    #[error("vertex {vertex} is not covered by any cluster")]
    Uncovered { vertex: VertexId },

    #[error("cluster {cluster} is empty")]
    EmptyCluster { cluster: usize },

    #[error("expected {expected} heads (one per cluster), found {found}")]
    HeadCount { expected: usize, found: usize },

    #[error("head {head} of cluster {cluster} is not a member of that cluster")]
    HeadNotMember { head: VertexId, cluster: usize },

    #[error("vertex {head} is the head of more than one cluster")]
    DuplicateHead { head: VertexId },
}
