//! Character-interaction network analysis.
//!
//! Ingests per-episode pairwise interaction records, builds weighted
//! multigraphs over arbitrary temporal slices, and computes structural
//! metrics, centrality measures, community detection (five algorithms),
//! and partition comparison (NMI, adjusted Rand index, mixing parameter).

pub mod community;
pub mod compare;
pub mod export;
pub mod graph;
pub mod ingest;
pub mod metrics;
pub mod report;

pub use graph::{MultiGraph, Partition, SimpleView, VertexId};
pub use ingest::{Corpus, EpisodeKey, SliceSpec};

/// Unified error type for the crate's fallible surface.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] graph::GraphError),
    #[error(transparent)]
    Ingest(#[from] ingest::IngestError),
    #[error(transparent)]
    Metrics(#[from] metrics::MetricsError),
    #[error(transparent)]
    Community(#[from] community::CommunityError),
    #[error(transparent)]
    Compare(#[from] compare::CompareError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code: 1 usage error, 2 data error, 3 numeric
    /// non-convergence.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 1,
            Error::Metrics(metrics::MetricsError::NonConvergence { .. }) => 3,
            Error::Community(community::CommunityError::NonConvergence { .. }) => 3,
            _ => 2,
        }
    }
}
