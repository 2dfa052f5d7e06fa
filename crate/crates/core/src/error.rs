use std::io;

use thiserror::Error;

/// Errors produced by hypergraph construction, analysis and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty hypergraph")]
    EmptyHypergraph,

    #[error("hyperlink {0} is empty")]
    EmptyLink(usize),

    #[error("hyperlink {link} references node {node} but the hypergraph has {node_count} nodes")]
    NodeOutOfRange {
        link: usize,
        node: usize,
        node_count: usize,
    },

    #[error("{kind} id {id} out of range (count {count})")]
    IdOutOfRange {
        kind: &'static str,
        id: usize,
        count: usize,
    },

    #[error("width undefined for identical communities")]
    IdenticalCommunities,

    #[error("k_max {given} inconsistent with incidence matrix (max column sum {actual})")]
    InconsistentKmax { given: usize, actual: usize },

    #[error("matrix of dimension {dim} exceeds the dense limit {limit}")]
    TooLarge { dim: usize, limit: usize },

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("eigensolver did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid growth configuration: {0}")]
    InvalidConfig(String),

    #[error("seed hypergraph has {nodes} nodes but at least {needed} are needed")]
    SeedTooSmall { nodes: usize, needed: usize },

    #[error("step {step}: linearity could not be satisfied after {retries} retries")]
    RetriesExceeded { step: usize, retries: usize },

    #[error("insufficient support: {0} positive points, need at least 3")]
    InsufficientSupport(usize),

    #[error("no valid membership lines ({skipped} skipped)")]
    NoValidLines { skipped: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
