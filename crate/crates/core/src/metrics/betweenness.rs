//! Brandes betweenness centrality.
//!
//! Distances are hop counts on the simple view, but geodesic counts weight
//! parallel edges: a path through an edge of multiplicity m stands for m
//! distinct geodesics. This matches how the reported centrality tables
//! were produced from multigraphs; on a simple graph it reduces to the
//! textbook algorithm.
//!
//! Per-source dependency passes are embarrassingly parallel; results are
//! collected in source order and summed sequentially so the totals are
//! bit-identical regardless of thread count.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::graph::{MultiGraph, VertexId};

use super::{MetricsError, VertexScores};

/// Adjacency with edge multiplicities, indexed by vertex.
fn weighted_adjacency(g: &MultiGraph) -> Vec<Vec<(VertexId, u32)>> {
    g.vertices().map(|v| g.neighbors(v).collect()).collect()
}

/// One Brandes pass: dependency of every vertex on geodesics from `source`.
fn vertex_dependencies(adj: &[Vec<(VertexId, u32)>], source: VertexId) -> Vec<f64> {
    let n = adj.len();
    let mut dist: Vec<i64> = vec![-1; n];
    let mut sigma = vec![0.0f64; n];
    let mut preds: Vec<Vec<(VertexId, u32)>> = vec![Vec::new(); n];
    let mut order: Vec<VertexId> = Vec::with_capacity(n);

    dist[source as usize] = 0;
    sigma[source as usize] = 1.0;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &(w, m) in &adj[v as usize] {
            if dist[w as usize] < 0 {
                dist[w as usize] = dist[v as usize] + 1;
                queue.push_back(w);
            }
            if dist[w as usize] == dist[v as usize] + 1 {
                sigma[w as usize] += sigma[v as usize] * f64::from(m);
                preds[w as usize].push((v, m));
            }
        }
    }

    let mut delta = vec![0.0f64; n];
    for &w in order.iter().rev() {
        for &(v, m) in &preds[w as usize] {
            delta[v as usize] +=
                sigma[v as usize] * f64::from(m) / sigma[w as usize] * (1.0 + delta[w as usize]);
        }
    }
    delta[source as usize] = 0.0;
    delta
}

/// Betweenness for every vertex. Unordered pairs are counted once;
/// pairs with no connecting geodesic contribute 0. Normalization divides
/// by (N−1)(N−2)/2.
pub fn betweenness_scores(g: &MultiGraph, normalized: bool) -> Result<VertexScores, MetricsError> {
    let n = g.order();
    if n == 0 {
        return Err(MetricsError::EmptyGraph);
    }
    if normalized && n < 3 {
        return Err(MetricsError::TooSmall { need: 3 });
    }
    let adj = weighted_adjacency(g);
    let per_source: Vec<Vec<f64>> = (0..n as VertexId)
        .into_par_iter()
        .map(|s| vertex_dependencies(&adj, s))
        .collect();
    let mut values = vec![0.0f64; n];
    for contribution in &per_source {
        for (acc, c) in values.iter_mut().zip(contribution) {
            *acc += c;
        }
    }
    // each unordered pair was visited from both endpoints
    for v in values.iter_mut() {
        *v /= 2.0;
    }
    if normalized {
        let pairs = (n - 1) as f64 * (n - 2) as f64 / 2.0;
        for v in values.iter_mut() {
            *v /= pairs;
        }
    }
    Ok(VertexScores {
        measure: "betweenness",
        values,
        normalized,
    })
}

/// Betweenness of a single vertex (computed via the all-vertices pass).
pub fn betweenness(g: &MultiGraph, v: VertexId, normalized: bool) -> Result<f64, MetricsError> {
    Ok(betweenness_scores(g, normalized)?.get(v))
}

/// Edge betweenness over an adjacency where every entry carries its edge
/// id and multiplicity. Used by divisive community detection, which
/// removes edges from a working copy between passes.
pub(crate) fn edge_betweenness_indexed(
    adj: &[Vec<(VertexId, usize, u32)>],
    edge_count: usize,
) -> Vec<f64> {
    let n = adj.len();
    let per_source: Vec<Vec<f64>> = (0..n as VertexId)
        .into_par_iter()
        .map(|s| edge_dependencies(adj, edge_count, s))
        .collect();
    let mut values = vec![0.0f64; edge_count];
    for contribution in &per_source {
        for (acc, c) in values.iter_mut().zip(contribution) {
            *acc += c;
        }
    }
    for v in values.iter_mut() {
        *v /= 2.0;
    }
    values
}

fn edge_dependencies(
    adj: &[Vec<(VertexId, usize, u32)>],
    edge_count: usize,
    source: VertexId,
) -> Vec<f64> {
    let n = adj.len();
    let mut dist: Vec<i64> = vec![-1; n];
    let mut sigma = vec![0.0f64; n];
    let mut preds: Vec<Vec<(VertexId, usize, u32)>> = vec![Vec::new(); n];
    let mut order: Vec<VertexId> = Vec::with_capacity(n);

    dist[source as usize] = 0;
    sigma[source as usize] = 1.0;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &(w, e, m) in &adj[v as usize] {
            if dist[w as usize] < 0 {
                dist[w as usize] = dist[v as usize] + 1;
                queue.push_back(w);
            }
            if dist[w as usize] == dist[v as usize] + 1 {
                sigma[w as usize] += sigma[v as usize] * f64::from(m);
                preds[w as usize].push((v, e, m));
            }
        }
    }

    let mut delta = vec![0.0f64; n];
    let mut edge_delta = vec![0.0f64; edge_count];
    for &w in order.iter().rev() {
        for &(v, e, m) in &preds[w as usize] {
            let c =
                sigma[v as usize] * f64::from(m) / sigma[w as usize] * (1.0 + delta[w as usize]);
            edge_delta[e] += c;
            delta[v as usize] += c;
        }
    }
    edge_delta
}
