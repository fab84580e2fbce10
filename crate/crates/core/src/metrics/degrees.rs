//! Degree-based measures. Degrees count edge multiplicities throughout, so
//! normalized degree may exceed 1 on multigraphs.

use crate::graph::{MultiGraph, VertexId};

use super::{MetricsError, VertexScores};

/// Multiplicity-counting degree divided by N−1.
pub fn normalized_degree(g: &MultiGraph, v: VertexId) -> Result<f64, MetricsError> {
    if g.order() < 2 {
        return Err(MetricsError::TooSmall { need: 2 });
    }
    Ok(g.degree(v) as f64 / (g.order() - 1) as f64)
}

/// Degree for every vertex, raw or divided by N−1.
pub fn degree_scores(g: &MultiGraph, normalized: bool) -> Result<VertexScores, MetricsError> {
    if g.order() == 0 {
        return Err(MetricsError::EmptyGraph);
    }
    if normalized && g.order() < 2 {
        return Err(MetricsError::TooSmall { need: 2 });
    }
    let div = if normalized {
        (g.order() - 1) as f64
    } else {
        1.0
    };
    Ok(VertexScores {
        measure: "degree",
        values: g.vertices().map(|v| g.degree(v) as f64 / div).collect(),
        normalized,
    })
}

/// Pearson correlation of multiplicity-counting degrees across edge
/// endpoints. Every parallel edge counts with its multiplicity and both
/// orientations are included.
pub fn degree_assortativity(g: &MultiGraph) -> Result<f64, MetricsError> {
    if g.edge_total() == 0 {
        return Err(MetricsError::Degenerate("assortativity needs edges"));
    }
    let deg: Vec<f64> = g.vertices().map(|v| g.degree(v) as f64).collect();
    let mut w_sum = 0.0;
    let mut x_sum = 0.0;
    let mut xy_sum = 0.0;
    let mut xx_sum = 0.0;
    for (u, v, m) in g.edges() {
        let w = f64::from(m);
        let (du, dv) = (deg[u as usize], deg[v as usize]);
        // both orientations
        w_sum += 2.0 * w;
        x_sum += w * (du + dv);
        xy_sum += 2.0 * w * du * dv;
        xx_sum += w * (du * du + dv * dv);
    }
    let mean = x_sum / w_sum;
    let var = xx_sum / w_sum - mean * mean;
    let cov = xy_sum / w_sum - mean * mean;
    if var.abs() < 1e-12 {
        return Err(MetricsError::Degenerate(
            "assortativity undefined for constant endpoint degrees",
        ));
    }
    Ok(cov / var)
}

/// Fraction of vertices whose degree falls in each half-open bucket.
/// `bounds` of length k produce k+1 buckets: `[0,b0), [b0,b1), ..., [b_k-1, ∞)`.
pub fn degree_histogram(g: &MultiGraph, bounds: &[u64]) -> Result<Vec<f64>, MetricsError> {
    if g.order() == 0 {
        return Err(MetricsError::EmptyGraph);
    }
    if bounds.windows(2).any(|w| w[0] >= w[1]) {
        return Err(MetricsError::BadBuckets);
    }
    let mut counts = vec![0u64; bounds.len() + 1];
    for v in g.vertices() {
        let d = g.degree(v);
        let bucket = bounds.iter().position(|&b| d < b).unwrap_or(bounds.len());
        counts[bucket] += 1;
    }
    let n = g.order() as f64;
    Ok(counts.into_iter().map(|c| c as f64 / n).collect())
}
