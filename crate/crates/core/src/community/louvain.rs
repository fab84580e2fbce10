//! Multilevel modularity optimization (Louvain).
//!
//! Local-move gains are compared in exact integer arithmetic (weights are
//! multiplicity counts), so tie handling and the final partition are fully
//! deterministic for a given seed.

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

use crate::graph::{MultiGraph, Partition};

use super::{CommunityError, Seed};

/// Working graph for one coarsening level. Self-loops carry the weight
/// collapsed inside a community; `strength` counts them twice.
#[derive(Clone)]
struct LevelGraph {
    adj: Vec<Vec<(usize, u64)>>,
    self_loop: Vec<u64>,
    strength: Vec<u64>,
    total: u64, // 2m
}

impl LevelGraph {
    fn from_multigraph(g: &MultiGraph) -> Self {
        let n = g.order();
        let mut adj = vec![Vec::new(); n];
        for (u, v, m) in g.edges() {
            adj[u as usize].push((v as usize, u64::from(m)));
            adj[v as usize].push((u as usize, u64::from(m)));
        }
        let strength: Vec<u64> = (0..n).map(|v| g.degree(v as u32)).collect();
        LevelGraph {
            adj,
            self_loop: vec![0; n],
            strength,
            total: 2 * g.edge_total(),
        }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }
}

/// Louvain: repeated seeded local-move passes followed by coarsening until
/// no move improves modularity, then a final vertex-level refinement so the
/// output is a local optimum under single-vertex moves.
pub fn multilevel(g: &MultiGraph, seed: Seed) -> Result<Partition, CommunityError> {
    if g.edge_total() == 0 {
        return Err(CommunityError::NoEdges);
    }
    let mut rng = seed.rng();
    let base = LevelGraph::from_multigraph(g);
    let mut membership: Vec<usize> = (0..base.len()).collect();
    let mut level = base.clone();
    loop {
        let mut assign: Vec<usize> = (0..level.len()).collect();
        let moved = local_move(&level, &mut assign, &mut rng);
        if !moved {
            break;
        }
        let (coarse, remap) = coarsen(&level, &assign);
        for slot in membership.iter_mut() {
            *slot = remap[assign[*slot]];
        }
        if coarse.len() == level.len() {
            break;
        }
        level = coarse;
    }
    // refinement pass on the original graph
    local_move(&base, &mut membership, &mut rng);
    Ok(Partition::from_labels(&membership))
}

/// Move vertices to the community with maximal positive gain until a full
/// pass makes no move. Candidates are the neighboring communities plus a
/// fresh singleton, so the fixpoint is a true single-vertex local optimum.
/// Gains are compared via the exact integer score 2m·k_in(c) − k_v·Σtot(c);
/// ties pick the lowest community id and staying wins over moving.
/// Returns whether any move was made.
fn local_move(lg: &LevelGraph, assign: &mut [usize], rng: &mut ChaCha8Rng) -> bool {
    let n = lg.len();
    let mut tot = vec![0u64; n];
    let mut size = vec![0usize; n];
    for v in 0..n {
        tot[assign[v]] += lg.strength[v];
        size[assign[v]] += 1;
    }
    // ids currently unused, smallest last so isolation reuses low ids
    let mut free: Vec<usize> = (0..n).rev().filter(|&c| size[c] == 0).collect();
    let mut weight_to = vec![0u64; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    let mut any_move = false;
    loop {
        order.shuffle(rng);
        let mut moved_in_pass = false;
        for &v in &order {
            let k_v = lg.strength[v];
            let home = assign[v];
            for &(w, m) in &lg.adj[v] {
                let c = assign[w];
                if weight_to[c] == 0 {
                    touched.push(c);
                }
                weight_to[c] += m;
            }
            tot[home] -= k_v;
            size[home] -= 1;
            let score = |c: usize, w_in: u64| {
                i128::from(lg.total) * i128::from(w_in) - i128::from(k_v) * i128::from(tot[c])
            };
            let mut best = home;
            let mut best_score = score(home, weight_to[home]);
            touched.sort_unstable();
            for &c in &touched {
                if c == home {
                    continue;
                }
                let s = score(c, weight_to[c]);
                if s > best_score {
                    best = c;
                    best_score = s;
                }
            }
            // isolation beats every occupied community only with score > 0
            if best_score < 0 && size[home] > 0 {
                best = free.pop().expect("an id is free when home is occupied");
            }
            if best != home && size[home] == 0 {
                free.push(home);
            }
            tot[best] += k_v;
            size[best] += 1;
            assign[v] = best;
            if best != home {
                moved_in_pass = true;
                any_move = true;
            }
            for &c in &touched {
                weight_to[c] = 0;
            }
            touched.clear();
        }
        if !moved_in_pass {
            break;
        }
    }
    any_move
}

/// Collapse communities into single vertices; returns the coarse graph and
/// the map from community id to coarse vertex id (communities numbered
/// ascending by id).
fn coarsen(lg: &LevelGraph, assign: &[usize]) -> (LevelGraph, Vec<usize>) {
    let n = lg.len();
    let mut remap = vec![usize::MAX; n];
    let mut next = 0usize;
    let mut ids: Vec<usize> = assign.to_vec();
    ids.sort_unstable();
    ids.dedup();
    for c in ids {
        remap[c] = next;
        next += 1;
    }
    let mut self_loop = vec![0u64; next];
    let mut cross: std::collections::BTreeMap<(usize, usize), u64> =
        std::collections::BTreeMap::new();
    for v in 0..n {
        let cv = remap[assign[v]];
        self_loop[cv] += lg.self_loop[v];
        for &(w, m) in &lg.adj[v] {
            if w < v {
                continue; // each undirected edge once
            }
            let cw = remap[assign[w]];
            if cv == cw {
                self_loop[cv] += m;
            } else {
                let key = if cv < cw { (cv, cw) } else { (cw, cv) };
                *cross.entry(key).or_insert(0) += m;
            }
        }
    }
    let mut adj = vec![Vec::new(); next];
    for (&(a, b), &m) in &cross {
        adj[a].push((b, m));
        adj[b].push((a, m));
    }
    let strength: Vec<u64> = (0..next)
        .map(|c| adj[c].iter().map(|&(_, m)| m).sum::<u64>() + 2 * self_loop[c])
        .collect();
    (
        LevelGraph {
            adj,
            self_loop,
            strength,
            total: lg.total,
        },
        remap,
    )
}
