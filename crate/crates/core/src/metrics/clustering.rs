//! Clustering coefficients on the simple view.

use crate::graph::MultiGraph;

/// Global transitivity: 3 × triangles / connected triples. Returns 0 when
/// the graph has no connected triple.
pub fn clustering_coefficient(g: &MultiGraph) -> f64 {
    let (triangles, triples) = triangles_and_triples(g);
    if triples == 0 {
        0.0
    } else {
        3.0 * triangles as f64 / triples as f64
    }
}

/// Mean of per-vertex local clustering; vertices of degree < 2 count as 0.
pub fn clustering_local_mean(g: &MultiGraph) -> f64 {
    let n = g.order();
    if n == 0 {
        return 0.0;
    }
    let s = g.simple();
    let mut sum = 0.0;
    for v in g.vertices() {
        let neighbors: Vec<_> = s.neighbors(v).collect();
        let d = neighbors.len();
        if d < 2 {
            continue;
        }
        let mut links = 0usize;
        for (i, &a) in neighbors.iter().enumerate() {
            for &b in &neighbors[i + 1..] {
                if s.has_edge(a, b) {
                    links += 1;
                }
            }
        }
        sum += 2.0 * links as f64 / (d * (d - 1)) as f64;
    }
    sum / n as f64
}

fn triangles_and_triples(g: &MultiGraph) -> (u64, u64) {
    let s = g.simple();
    let mut triangles = 0u64;
    let mut triples = 0u64;
    for v in g.vertices() {
        let d = s.degree(v) as u64;
        triples += d * d.saturating_sub(1) / 2;
        // count each triangle once at its smallest vertex
        let neighbors: Vec<_> = s.neighbors(v).filter(|&w| w > v).collect();
        for (i, &a) in neighbors.iter().enumerate() {
            for &b in &neighbors[i + 1..] {
                if s.has_edge(a, b) {
                    triangles += 1;
                }
            }
        }
    }
    (triangles, triples)
}
