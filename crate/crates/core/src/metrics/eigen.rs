//! Eigenvector centrality of the multiplicity-weighted adjacency.

use crate::graph::{MultiGraph, VertexId};

use super::{components, MetricsError, VertexScores};

const TOLERANCE: f64 = 1e-10;
const MAX_ITERATIONS: usize = 10_000;

/// Principal eigenvector by power iteration, scaled so the maximum entry
/// is 1. The iteration runs on A + I, which shares eigenvectors with A but
/// cannot oscillate on bipartite graphs.
///
/// Disconnected graphs are an error unless `per_component` is set, in which
/// case each component is solved independently (and single-vertex
/// components score 0).
pub fn eigenvector_centrality(
    g: &MultiGraph,
    per_component: bool,
) -> Result<VertexScores, MetricsError> {
    let n = g.order();
    if n == 0 {
        return Err(MetricsError::EmptyGraph);
    }
    let comps = components(g);
    if comps.len() > 1 && !per_component {
        return Err(MetricsError::Disconnected);
    }
    let mut values = vec![0.0f64; n];
    for comp in &comps {
        if comp.len() == 1 {
            continue; // zero adjacency, centrality 0
        }
        solve_component(g, comp, &mut values)?;
    }
    Ok(VertexScores {
        measure: "eigenvector",
        values,
        normalized: true,
    })
}

fn solve_component(
    g: &MultiGraph,
    comp: &[VertexId],
    values: &mut [f64],
) -> Result<(), MetricsError> {
    let k = comp.len();
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &v) in comp.iter().enumerate() {
        pos[v as usize] = i;
    }
    let mut x = vec![1.0f64 / k as f64; k];
    let mut next = vec![0.0f64; k];
    for _ in 0..MAX_ITERATIONS {
        for (i, &v) in comp.iter().enumerate() {
            let mut acc = x[i]; // the +I shift
            for (w, m) in g.neighbors(v) {
                acc += f64::from(m) * x[pos[w as usize]];
            }
            next[i] = acc;
        }
        let norm = next.iter().cloned().fold(0.0f64, f64::max);
        for value in next.iter_mut() {
            *value /= norm;
        }
        let diff = x
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        std::mem::swap(&mut x, &mut next);
        if diff < TOLERANCE {
            for (i, &v) in comp.iter().enumerate() {
                values[v as usize] = x[i];
            }
            return Ok(());
        }
    }
    Err(MetricsError::NonConvergence {
        iterations: MAX_ITERATIONS,
    })
}
