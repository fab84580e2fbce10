//! Shared fixtures and independent oracles for the integration suites.
//!
//! The oracles here deliberately avoid the library's algorithm paths:
//! distances come from Floyd–Warshall, geodesics from explicit path
//! enumeration, and cliques from exhaustive subset search.

#![allow(dead_code)]

use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use castnet::graph::MultiGraph;

pub const INF: u32 = u32::MAX;

/// Seeded random multigraph over `n` vertices: each pair carries an edge
/// with probability `p`, with multiplicity 1..=4.
pub fn random_multigraph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> MultiGraph {
    let mut g = MultiGraph::new();
    for v in 0..n {
        g.intern(&format!("v{v}"));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(p) {
                let multiplicity = rng.gen_range(1..=4);
                g.add_interactions(&format!("v{i}"), &format!("v{j}"), multiplicity)
                    .unwrap();
            }
        }
    }
    g
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All-pairs hop distances by Floyd–Warshall on the simple view.
pub fn floyd_warshall(g: &MultiGraph) -> Vec<Vec<u32>> {
    let n = g.order();
    let mut dist = vec![vec![INF; n]; n];
    for (v, row) in dist.iter_mut().enumerate() {
        row[v] = 0;
    }
    for (u, v, _) in g.edges() {
        dist[u as usize][v as usize] = 1;
        dist[v as usize][u as usize] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            if dist[i][k] == INF {
                continue;
            }
            for j in 0..n {
                if dist[k][j] == INF {
                    continue;
                }
                let through = dist[i][k] + dist[k][j];
                if through < dist[i][j] {
                    dist[i][j] = through;
                }
            }
        }
    }
    dist
}

/// Maximum finite Floyd–Warshall distance.
pub fn fw_diameter(g: &MultiGraph) -> u32 {
    floyd_warshall(g)
        .iter()
        .flatten()
        .copied()
        .filter(|&d| d != INF)
        .max()
        .unwrap_or(0)
}

/// Every geodesic path between `s` and `t` as full vertex sequences,
/// found by walking edges that step exactly one hop closer to `t`.
pub fn enumerate_geodesics(
    g: &MultiGraph,
    dist: &[Vec<u32>],
    s: u32,
    t: u32,
) -> Vec<Vec<u32>> {
    let mut paths = Vec::new();
    if dist[s as usize][t as usize] == INF {
        return paths;
    }
    let mut current = vec![s];
    walk(g, dist, t, &mut current, &mut paths);
    paths
}

fn walk(g: &MultiGraph, dist: &[Vec<u32>], t: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let u = *current.last().unwrap();
    if u == t {
        out.push(current.clone());
        return;
    }
    for w in g.simple().neighbors(u) {
        if dist[w as usize][t as usize] != INF
            && dist[w as usize][t as usize] + 1 == dist[u as usize][t as usize]
        {
            current.push(w);
            walk(g, dist, t, current, out);
            current.pop();
        }
    }
}

/// Brute-force betweenness: enumerate all geodesics per unordered pair and
/// sum the interior-vertex fractions. Parallel edges make a path count as
/// many times as the product of its edge multiplicities.
pub fn brute_force_betweenness(g: &MultiGraph) -> Vec<f64> {
    let n = g.order();
    let dist = floyd_warshall(g);
    let mut scores = vec![0.0f64; n];
    for s in 0..n as u32 {
        for t in (s + 1)..n as u32 {
            let paths = enumerate_geodesics(g, &dist, s, t);
            if paths.is_empty() {
                continue;
            }
            let weight_of = |path: &[u32]| -> f64 {
                path.windows(2)
                    .map(|uv| f64::from(g.multiplicity(uv[0], uv[1])))
                    .product()
            };
            let total: f64 = paths.iter().map(|p| weight_of(p)).sum();
            let mut through = vec![0.0f64; n];
            for path in &paths {
                let w = weight_of(path);
                for &v in &path[1..path.len() - 1] {
                    through[v as usize] += w;
                }
            }
            for (v, &count) in through.iter().enumerate() {
                scores[v] += count / total;
            }
        }
    }
    scores
}

/// Exhaustive maximum clique over all vertex subsets (n ≤ 15 or so).
pub fn brute_force_clique_number(g: &MultiGraph) -> usize {
    let n = g.order();
    assert!(n <= 20, "subset oracle is exponential");
    let mut adj = vec![0u32; n];
    for (u, v, _) in g.edges() {
        adj[u as usize] |= 1 << v;
        adj[v as usize] |= 1 << u;
    }
    let mut best = 0;
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let mut ok = true;
        let mut bits = mask;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if adj[v] & mask != mask & !(1 << v) {
                ok = false;
                break;
            }
        }
        if ok {
            best = size;
        }
    }
    best
}

/// Write a small deterministic synthetic corpus; returns episode count.
pub fn write_synthetic_corpus(dir: &Path) -> usize {
    let episodes: [(&str, &[(&str, &str, u32)]); 4] = [
        (
            "s01e01.txt",
            &[("Anna", "Ben", 3), ("Ben", "Cleo", 1), ("Anna", "Cleo", 2)],
        ),
        (
            "s01e02.txt",
            &[("Anna", "Ben", 1), ("Dora", "Emil", 2), ("Ben", "Dora", 1)],
        ),
        (
            "s02e01.txt",
            &[
                ("Anna", "Ben", 2),
                ("Cleo", "Dora", 1),
                ("Emil", "Fritz", 4),
                ("Anna", "Fritz", 1),
            ],
        ),
        ("s02e02.txt", &[("Ben", "Cleo", 2), ("Fritz", "Gina", 1)]),
    ];
    for (name, edges) in episodes {
        let mut text = String::new();
        for (a, b, m) in edges {
            for _ in 0..*m {
                text.push_str(&format!("{a}\t{b}\n"));
            }
        }
        fs::write(dir.join(name), text).unwrap();
    }
    4
}
