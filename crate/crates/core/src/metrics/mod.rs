//! Structural and centrality measures.
//!
//! Geodesic-based measures (distances, diameter, betweenness, closeness,
//! clustering, cliques) operate on the collapsed [`SimpleView`]; degree,
//! assortativity, and eigenvector centrality keep edge multiplicities.
//!
//! [`SimpleView`]: crate::graph::SimpleView

mod betweenness;
mod cliques;
mod clustering;
mod degrees;
mod eigen;
mod geodesics;

pub use betweenness::{betweenness, betweenness_scores};
pub(crate) use betweenness::edge_betweenness_indexed;
pub use cliques::clique_number;
pub use clustering::{clustering_coefficient, clustering_local_mean};
pub use degrees::{degree_assortativity, degree_histogram, degree_scores, normalized_degree};
pub use eigen::eigenvector_centrality;
pub use geodesics::{
    closeness, closeness_scores, components, diameter, geodesics, is_connected, mean_geodesic,
    ClosenessOptions, DisconnectedPolicy, GeodesicTable,
};

use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Error, PartialEq)]
pub enum MetricsError {
    #[error("operation needs a non-empty graph")]
    EmptyGraph,
    #[error("graph is disconnected; pass the restrict-to-component flag to measure within components")]
    Disconnected,
    #[error("graph too small: need at least {need} vertices")]
    TooSmall { need: usize },
    #[error("undefined: {0}")]
    Degenerate(&'static str),
    #[error("bucket bounds must be strictly increasing")]
    BadBuckets,
    #[error("power iteration did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },
}

/// One score per vertex for a named measure.
#[derive(Debug, Clone)]
pub struct VertexScores {
    pub measure: &'static str,
    pub values: Vec<f64>,
    pub normalized: bool,
}

impl VertexScores {
    pub fn get(&self, v: VertexId) -> f64 {
        self.values[v as usize]
    }

    /// Vertices sorted by descending score, ties by ascending vertex id.
    pub fn ranked(&self) -> Vec<(VertexId, f64)> {
        let mut out: Vec<(VertexId, f64)> = self
            .values
            .iter()
            .enumerate()
            .map(|(v, &s)| (v as VertexId, s))
            .collect();
        out.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
        out
    }
}
