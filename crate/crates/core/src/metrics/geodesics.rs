//! Breadth-first geodesics, path counts, and distance-derived measures.

use std::collections::VecDeque;

use crate::graph::{MultiGraph, VertexId};

use super::{MetricsError, VertexScores};

/// Per-source distances, geodesic path counts, and predecessor links,
/// computed by BFS on the simple view.
#[derive(Debug, Clone)]
pub struct GeodesicTable {
    pub source: VertexId,
    /// Hop count per vertex; `None` marks unreachable vertices.
    pub dist: Vec<Option<u32>>,
    /// Number of geodesic paths from the source (0 when unreachable).
    /// Exact for counts below 2^53.
    pub sigma: Vec<f64>,
    /// Predecessors along geodesics, for path-count accumulation.
    pub preds: Vec<Vec<VertexId>>,
}

impl GeodesicTable {
    /// Largest finite distance from the source.
    pub fn eccentricity(&self) -> u32 {
        self.dist.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Sum of finite distances and the count of reachable vertices
    /// (including the source itself).
    pub fn distance_sum(&self) -> (u64, usize) {
        let mut sum = 0u64;
        let mut reached = 0usize;
        for d in self.dist.iter().flatten() {
            sum += u64::from(*d);
            reached += 1;
        }
        (sum, reached)
    }
}

/// BFS from `source` on the simple view.
pub fn geodesics(g: &MultiGraph, source: VertexId) -> GeodesicTable {
    let n = g.order();
    let s = g.simple();
    let mut dist = vec![None; n];
    let mut sigma = vec![0.0; n];
    let mut preds = vec![Vec::new(); n];
    dist[source as usize] = Some(0);
    sigma[source as usize] = 1.0;
    let mut queue = VecDeque::new();
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        let dv = dist[v as usize].unwrap();
        for w in s.neighbors(v) {
            if dist[w as usize].is_none() {
                dist[w as usize] = Some(dv + 1);
                queue.push_back(w);
            }
            if dist[w as usize] == Some(dv + 1) {
                sigma[w as usize] += sigma[v as usize];
                preds[w as usize].push(v);
            }
        }
    }
    GeodesicTable {
        source,
        dist,
        sigma,
        preds,
    }
}

/// Connected components on the simple view, each sorted ascending; the list
/// is ordered by smallest member.
pub fn components(g: &MultiGraph) -> Vec<Vec<VertexId>> {
    let n = g.order();
    let s = g.simple();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n as VertexId {
        if seen[start as usize] {
            continue;
        }
        let mut comp = vec![start];
        seen[start as usize] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for w in s.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn is_connected(g: &MultiGraph) -> bool {
    g.order() <= 1 || components(g).len() == 1
}

/// Mean geodesic distance from `v`: the distance sum over all vertices
/// (zero self-term included) divided by N. With `restrict_component`, both
/// the sum and the divisor are taken over `v`'s component.
pub fn mean_geodesic(
    g: &MultiGraph,
    v: VertexId,
    restrict_component: bool,
) -> Result<f64, MetricsError> {
    let table = geodesics(g, v);
    let (sum, reached) = table.distance_sum();
    if reached < g.order() && !restrict_component {
        return Err(MetricsError::Disconnected);
    }
    Ok(sum as f64 / reached as f64)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ClosenessOptions {
    /// Measure within the vertex's component instead of failing on
    /// disconnected graphs.
    pub restrict_component: bool,
    /// Use the conventional (N−1)/Σ numerator instead of N/Σ.
    pub conventional: bool,
}

/// Closeness centrality: N divided by the distance sum (the inverse of the
/// mean geodesic distance).
pub fn closeness(
    g: &MultiGraph,
    v: VertexId,
    options: ClosenessOptions,
) -> Result<f64, MetricsError> {
    let table = geodesics(g, v);
    closeness_from_table(g, &table, options)
}

fn closeness_from_table(
    g: &MultiGraph,
    table: &GeodesicTable,
    options: ClosenessOptions,
) -> Result<f64, MetricsError> {
    let (sum, reached) = table.distance_sum();
    if reached < g.order() && !options.restrict_component {
        return Err(MetricsError::Disconnected);
    }
    if sum == 0 {
        return Err(MetricsError::Degenerate(
            "closeness of an isolated vertex (zero distance sum)",
        ));
    }
    let numerator = if options.conventional {
        (reached - 1) as f64
    } else {
        reached as f64
    };
    Ok(numerator / sum as f64)
}

/// Closeness for every vertex.
pub fn closeness_scores(
    g: &MultiGraph,
    options: ClosenessOptions,
) -> Result<VertexScores, MetricsError> {
    if g.order() == 0 {
        return Err(MetricsError::EmptyGraph);
    }
    let mut values = Vec::with_capacity(g.order());
    for v in g.vertices() {
        values.push(closeness(g, v, options)?);
    }
    Ok(VertexScores {
        measure: "closeness",
        values,
        normalized: false,
    })
}

/// What to do with unreachable pairs when measuring the diameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DisconnectedPolicy {
    /// Take the maximum over finite distances only.
    #[default]
    IgnoreInfinite,
    /// Fail when any pair is unreachable.
    Error,
}

/// Maximum finite geodesic distance over all pairs.
pub fn diameter(g: &MultiGraph, policy: DisconnectedPolicy) -> Result<u32, MetricsError> {
    let n = g.order();
    if n == 0 {
        return Err(MetricsError::EmptyGraph);
    }
    let mut max = 0u32;
    for v in g.vertices() {
        let table = geodesics(g, v);
        if policy == DisconnectedPolicy::Error && table.dist.iter().any(Option::is_none) {
            return Err(MetricsError::Disconnected);
        }
        max = max.max(table.eccentricity());
    }
    Ok(max)
}
