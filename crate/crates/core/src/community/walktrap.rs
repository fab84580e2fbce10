//! Walktrap: agglomerative clustering by short random-walk distances
//! (Pons–Latapy), with multiplicity-weighted transition probabilities.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap};

use rayon::prelude::*;

use crate::graph::{MultiGraph, Partition, VertexId};

use super::{modularity, CommunityError, Dendrogram, Level};

/// Ward-style merging of adjacent communities that minimizes the increase
/// in squared random-walk distance. Walk distances come from
/// `walk_length`-step transition probabilities. The dendrogram starts from
/// singletons and records every merge; isolated vertices never merge. The
/// algorithm is deterministic: distance ties pick the smallest community
/// pair.
pub fn walktrap(g: &MultiGraph, walk_length: usize) -> Result<Dendrogram, CommunityError> {
    if g.edge_total() == 0 {
        return Err(CommunityError::NoEdges);
    }
    if walk_length == 0 {
        return Err(CommunityError::InvalidParameter("walk_length must be >= 1"));
    }
    let n = g.order();
    let strength: Vec<f64> = g.vertices().map(|v| g.degree(v) as f64).collect();
    let rows: Vec<Vec<f64>> = (0..n as VertexId)
        .into_par_iter()
        .map(|v| walk_row(g, &strength, v, walk_length))
        .collect();

    // community state; merged communities get fresh ids n, n+1, ...
    let capacity = 2 * n;
    let mut size = vec![0usize; capacity];
    let mut row: Vec<Vec<f64>> = vec![Vec::new(); capacity];
    let mut alive = vec![false; capacity];
    let mut neighbors: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); capacity];
    for v in 0..n {
        size[v] = 1;
        alive[v] = true;
        row[v] = rows[v].clone();
    }
    for (u, v, _) in g.edges() {
        neighbors[u as usize].insert(v as usize);
        neighbors[v as usize].insert(u as usize);
    }

    let mut assign: Vec<usize> = (0..n).collect();
    let mut levels = vec![record_level(g, &assign)?];

    let mut distances: HashMap<(usize, usize), f64> = HashMap::new();
    let mut heap: BinaryHeap<Reverse<(OrderedF64, usize, usize)>> = BinaryHeap::new();
    for (u, v, _) in g.edges() {
        let (a, b) = (u as usize, v as usize);
        let d = merge_cost(&row[a], &row[b], size[a], size[b], &strength, n);
        distances.insert((a, b), d);
        heap.push(Reverse((OrderedF64(d), a, b)));
    }

    let mut next_id = n;
    while let Some(Reverse((OrderedF64(d), a, b))) = heap.pop() {
        if !alive[a] || !alive[b] || distances.get(&(a, b)) != Some(&d) {
            continue; // stale entry
        }
        let c = next_id;
        next_id += 1;
        alive[a] = false;
        alive[b] = false;
        alive[c] = true;
        size[c] = size[a] + size[b];
        let total = size[c] as f64;
        row[c] = row[a]
            .iter()
            .zip(&row[b])
            .map(|(&ra, &rb)| (size[a] as f64 * ra + size[b] as f64 * rb) / total)
            .collect();
        row[a].clear();
        row[b].clear();
        let merged_neighbors: BTreeSet<usize> = neighbors[a]
            .union(&neighbors[b])
            .copied()
            .filter(|&x| x != a && x != b && alive[x])
            .collect();
        for &nb in &merged_neighbors {
            neighbors[nb].remove(&a);
            neighbors[nb].remove(&b);
            neighbors[nb].insert(c);
            let key = if nb < c { (nb, c) } else { (c, nb) };
            let cost = merge_cost(&row[c], &row[nb], size[c], size[nb], &strength, n);
            distances.insert(key, cost);
            heap.push(Reverse((OrderedF64(cost), key.0, key.1)));
        }
        neighbors[c] = merged_neighbors;
        neighbors[a].clear();
        neighbors[b].clear();

        for slot in assign.iter_mut() {
            if *slot == a || *slot == b {
                *slot = c;
            }
        }
        levels.push(record_level(g, &assign)?);
    }
    Ok(Dendrogram { levels })
}

fn record_level(g: &MultiGraph, assign: &[usize]) -> Result<Level, CommunityError> {
    let partition = Partition::from_labels(assign);
    let q = modularity(g, &partition)?;
    Ok(Level {
        partition,
        modularity: q,
    })
}

/// Probability row of a `t`-step walk started at `v`.
fn walk_row(g: &MultiGraph, strength: &[f64], v: VertexId, t: usize) -> Vec<f64> {
    let n = g.order();
    let mut x = vec![0.0f64; n];
    x[v as usize] = 1.0;
    let mut y = vec![0.0f64; n];
    for _ in 0..t {
        y.iter_mut().for_each(|p| *p = 0.0);
        for k in 0..n {
            if x[k] == 0.0 {
                continue;
            }
            let share = x[k] / strength[k];
            for (w, m) in g.neighbors(k as VertexId) {
                y[w as usize] += share * f64::from(m);
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    x
}

/// Ward increase for merging two communities:
/// Δσ = (|A||B| / (|A|+|B|)) · r²(A,B) / n, with
/// r²(A,B) = Σ_k (P_Ak − P_Bk)² / d_k over non-isolated k.
fn merge_cost(
    row_a: &[f64],
    row_b: &[f64],
    size_a: usize,
    size_b: usize,
    strength: &[f64],
    n: usize,
) -> f64 {
    let mut r2 = 0.0;
    for k in 0..row_a.len() {
        if strength[k] == 0.0 {
            continue;
        }
        let d = row_a[k] - row_b[k];
        r2 += d * d / strength[k];
    }
    (size_a * size_b) as f64 / (size_a + size_b) as f64 * r2 / n as f64
}

/// Total order on finite f64 costs so heap ties break on community ids.
#[derive(PartialEq)]
struct OrderedF64(f64);

impl Eq for OrderedF64 {}

impl PartialOrd for OrderedF64 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrderedF64 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}
