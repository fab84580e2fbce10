//! Community detection over multiplicity-weighted graphs.
//!
//! Five methods produce [`Partition`]s: multilevel (Louvain), label
//! propagation, Girvan–Newman edge betweenness, Newman's leading
//! eigenvector, and walktrap. Edge weights are multiplicities everywhere:
//! in modularity, in label support, and in walk probabilities.
//!
//! Stochastic methods take a [`Seed`]; the same seed and input always
//! produce the same partition, regardless of thread count.

mod girvan_newman;
mod label_prop;
mod leading_eigen;
mod louvain;
mod walktrap;

pub use girvan_newman::girvan_newman;
pub use label_prop::label_propagation;
pub use leading_eigen::leading_eigenvector;
pub use louvain::multilevel;
pub use walktrap::walktrap;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{MultiGraph, Partition};

#[derive(Debug, Error, PartialEq)]
pub enum CommunityError {
    #[error("graph has no edges")]
    NoEdges,
    #[error("partition covers {got} vertices but the graph has {want}")]
    PartitionMismatch { got: usize, want: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("power iteration did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },
}

/// Seed for the stochastic methods' vertex orders and tie-breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Seed(pub u64);

impl Seed {
    pub(crate) fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

impl Default for Seed {
    fn default() -> Self {
        Seed(0)
    }
}

/// One level of a hierarchical clustering, with its modularity.
#[derive(Debug, Clone)]
pub struct Level {
    pub partition: Partition,
    pub modularity: f64,
}

/// Sequence of partitions recorded by a hierarchical method, in production
/// order, with modularity at every level.
#[derive(Debug, Clone)]
pub struct Dendrogram {
    pub levels: Vec<Level>,
}

impl Dendrogram {
    /// The level of maximal modularity (first such level on ties).
    pub fn best(&self) -> &Level {
        self.levels
            .iter()
            .reduce(|best, l| if l.modularity > best.modularity { l } else { best })
            .expect("dendrogram has at least one level")
    }

    pub fn best_partition(&self) -> &Partition {
        &self.best().partition
    }
}

/// Newman–Girvan modularity with edge weights = multiplicities:
/// Q = (1/2m) Σ_ij [A_ij − k_i k_j / 2m] δ(c_i, c_j).
pub fn modularity(g: &MultiGraph, p: &Partition) -> Result<f64, CommunityError> {
    if p.len() != g.order() {
        return Err(CommunityError::PartitionMismatch {
            got: p.len(),
            want: g.order(),
        });
    }
    if g.edge_total() == 0 {
        return Err(CommunityError::NoEdges);
    }
    let m2 = 2.0 * g.edge_total() as f64;
    let k = p.community_count();
    let mut internal = vec![0.0f64; k]; // ordered-pair internal weight
    let mut total = vec![0.0f64; k]; // sum of weighted degrees
    for v in g.vertices() {
        total[p.community_of(v) as usize] += g.degree(v) as f64;
    }
    for (u, v, m) in g.edges() {
        if p.community_of(u) == p.community_of(v) {
            internal[p.community_of(u) as usize] += 2.0 * f64::from(m);
        }
    }
    Ok(internal
        .iter()
        .zip(&total)
        .map(|(&i, &t)| i / m2 - (t / m2) * (t / m2))
        .sum())
}
