//! Asynchronous label propagation with seeded order and tie-breaking.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{MultiGraph, Partition};

use super::{CommunityError, Seed};

/// Every vertex repeatedly adopts the label with maximal
/// multiplicity-weighted support among its neighbors, visiting vertices in
/// seeded random order; ties are broken uniformly at random. A vertex whose
/// own label is already among the maximal ones keeps it, so the sweep loop
/// terminates exactly when every vertex's label attains maximal support.
pub fn label_propagation(g: &MultiGraph, seed: Seed) -> Result<Partition, CommunityError> {
    if g.edge_total() == 0 {
        return Err(CommunityError::NoEdges);
    }
    let n = g.order();
    let mut rng = seed.rng();
    let mut labels: Vec<u32> = (0..n as u32).collect();
    let mut order: Vec<u32> = (0..n as u32).collect();
    loop {
        order.shuffle(&mut rng);
        let mut changed = false;
        for &v in &order {
            let mut support: BTreeMap<u32, u64> = BTreeMap::new();
            for (w, m) in g.neighbors(v) {
                *support.entry(labels[w as usize]).or_insert(0) += u64::from(m);
            }
            let Some(&max) = support.values().max() else {
                continue; // isolated vertex keeps its own label
            };
            if support.get(&labels[v as usize]) == Some(&max) {
                continue;
            }
            let ties: Vec<u32> = support
                .iter()
                .filter(|&(_, &s)| s == max)
                .map(|(&l, _)| l)
                .collect();
            labels[v as usize] = ties[rng.gen_range(0..ties.len())];
            changed = true;
        }
        if !changed {
            break;
        }
    }
    Ok(Partition::from_labels(&labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::MultiGraph;

    fn two_cliques(n: usize) -> MultiGraph {
        let mut g = MultiGraph::new();
        for group in ["a", "b"] {
            for i in 0..n {
                for j in (i + 1)..n {
                    g.add_interaction(&format!("{group}{i}"), &format!("{group}{j}"))
                        .unwrap();
                }
            }
        }
        g
    }

    #[test]
    fn disjoint_cliques_get_two_communities() {
        let g = two_cliques(5);
        let p = label_propagation(&g, Seed(1)).unwrap();
        assert_eq!(p.community_count(), 2);
    }

    #[test]
    fn termination_state_supports_every_label() {
        let mut g = two_cliques(4);
        g.add_interaction("a0", "b0").unwrap();
        g.add_interactions("a1", "b1", 3).unwrap();
        for seed in 0..10u64 {
            let p = label_propagation(&g, Seed(seed)).unwrap();
            for v in g.vertices() {
                let mut support: BTreeMap<u32, u64> = BTreeMap::new();
                for (w, m) in g.neighbors(v) {
                    *support.entry(p.community_of(w)).or_insert(0) += u64::from(m);
                }
                let max = support.values().copied().max().unwrap();
                assert_eq!(
                    support.get(&p.community_of(v)),
                    Some(&max),
                    "seed {seed}: vertex {} lacks maximal support",
                    g.label(v)
                );
            }
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let mut g = two_cliques(4);
        g.add_interaction("a0", "b0").unwrap();
        let p1 = label_propagation(&g, Seed(99)).unwrap();
        let p2 = label_propagation(&g, Seed(99)).unwrap();
        assert_eq!(p1, p2);
    }

    #[test]
    fn weights_dominate_support() {
        // path a - b with a heavy edge and a light tail
        let mut g = MultiGraph::new();
        g.add_interactions("a", "b", 10).unwrap();
        g.add_interaction("b", "c").unwrap();
        let p = label_propagation(&g, Seed(0)).unwrap();
        assert_eq!(
            p.community_of(g.vertex("a").unwrap()),
            p.community_of(g.vertex("b").unwrap())
        );
    }

    #[test]
    fn isolated_vertices_stay_alone() {
        let mut g = two_cliques(3);
        g.intern("loner");
        let p = label_propagation(&g, Seed(5)).unwrap();
        let loner = g.vertex("loner").unwrap();
        let c = p.community_of(loner);
        for v in g.vertices().filter(|&v| v != loner) {
            assert_ne!(p.community_of(v), c);
        }
    }

    #[test]
    fn no_edges_is_error() {
        let mut g = MultiGraph::new();
        g.intern("x");
        g.intern("y");
        assert_eq!(
            label_propagation(&g, Seed(0)).unwrap_err(),
            CommunityError::NoEdges
        );
    }
}
