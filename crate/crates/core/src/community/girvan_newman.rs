//! Divisive clustering by iterated removal of the highest-betweenness edge.

use crate::graph::{MultiGraph, Partition, VertexId};
use crate::metrics::edge_betweenness_indexed;

use super::{modularity, CommunityError, Dendrogram, Level};

/// Remove the edge of highest betweenness (recomputed after every removal,
/// on the simple view), recording a level whenever a component splits.
/// Equal-betweenness ties pick the lexicographically smallest edge. The
/// first level is the partition into initial connected components; levels
/// refine strictly from there. `max_levels` caps how many levels are
/// recorded (`None` runs down to singletons).
pub fn girvan_newman(
    g: &MultiGraph,
    max_levels: Option<usize>,
) -> Result<Dendrogram, CommunityError> {
    if g.edge_total() == 0 {
        return Err(CommunityError::NoEdges);
    }
    let n = g.order();
    let mut adj: Vec<Vec<(VertexId, u32)>> =
        g.vertices().map(|v| g.neighbors(v).collect()).collect();
    let mut levels = Vec::new();
    let mut component_count = {
        let labels = component_labels(&adj);
        let partition = Partition::from_labels(&labels);
        let q = modularity(g, &partition)?;
        levels.push(Level {
            partition,
            modularity: q,
        });
        levels[0].partition.community_count()
    };

    let at_cap = |levels: &Vec<Level>| max_levels.is_some_and(|cap| levels.len() >= cap);
    while !at_cap(&levels) {
        // index the remaining edges; ids are lexicographic by (u, v)
        let mut edges: Vec<(VertexId, VertexId, u32)> = Vec::new();
        for u in 0..n as VertexId {
            for &(v, m) in &adj[u as usize] {
                if u < v {
                    edges.push((u, v, m));
                }
            }
        }
        if edges.is_empty() {
            break;
        }
        let mut indexed: Vec<Vec<(VertexId, usize, u32)>> = vec![Vec::new(); n];
        for (idx, &(u, v, m)) in edges.iter().enumerate() {
            indexed[u as usize].push((v, idx, m));
            indexed[v as usize].push((u, idx, m));
        }
        let eb = edge_betweenness_indexed(&indexed, edges.len());
        let mut best = 0usize;
        for (idx, &score) in eb.iter().enumerate() {
            if score > eb[best] {
                best = idx;
            }
        }
        let (u, v, _) = edges[best];
        adj[u as usize].retain(|&(w, _)| w != v);
        adj[v as usize].retain(|&(w, _)| w != u);

        let labels = component_labels(&adj);
        let partition = Partition::from_labels(&labels);
        if partition.community_count() > component_count {
            component_count = partition.community_count();
            let q = modularity(g, &partition)?;
            levels.push(Level {
                partition,
                modularity: q,
            });
        }
    }
    Ok(Dendrogram { levels })
}

fn component_labels(adj: &[Vec<(VertexId, u32)>]) -> Vec<u32> {
    let n = adj.len();
    let mut labels = vec![u32::MAX; n];
    let mut next = 0u32;
    let mut stack = Vec::new();
    for start in 0..n {
        if labels[start] != u32::MAX {
            continue;
        }
        labels[start] = next;
        stack.push(start as VertexId);
        while let Some(v) = stack.pop() {
            for &(w, _) in &adj[v as usize] {
                if labels[w as usize] == u32::MAX {
                    labels[w as usize] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    labels
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::MultiGraph;

    fn barbell() -> MultiGraph {
        // two K_4's joined by one bridge
        let mut g = MultiGraph::new();
        for group in ["a", "b"] {
            for i in 0..4 {
                for j in (i + 1)..4 {
                    g.add_interaction(&format!("{group}{i}"), &format!("{group}{j}"))
                        .unwrap();
                }
            }
        }
        g.add_interaction("a0", "b0").unwrap();
        g
    }

    #[test]
    fn bridge_removed_first_and_best_cut_is_the_cliques() {
        let g = barbell();
        let dendrogram = girvan_newman(&g, None).unwrap();
        // level 0: one component; level 1: the bridge is gone
        assert_eq!(dendrogram.levels[0].partition.community_count(), 1);
        let level1 = &dendrogram.levels[1].partition;
        assert_eq!(level1.community_count(), 2);
        assert_eq!(
            level1.community_of(g.vertex("a0").unwrap()),
            level1.community_of(g.vertex("a3").unwrap())
        );
        assert_ne!(
            level1.community_of(g.vertex("a0").unwrap()),
            level1.community_of(g.vertex("b0").unwrap())
        );
        let best = dendrogram.best_partition();
        assert_eq!(best, level1);
    }

    #[test]
    fn two_vertex_path_splits_to_singletons() {
        let mut g = MultiGraph::new();
        g.add_interactions("a", "b", 5).unwrap();
        let dendrogram = girvan_newman(&g, None).unwrap();
        assert_eq!(dendrogram.levels.len(), 2);
        assert_eq!(dendrogram.levels[1].partition.community_count(), 2);
    }

    #[test]
    fn levels_refine_strictly() {
        let g = barbell();
        let dendrogram = girvan_newman(&g, None).unwrap();
        for pair in dendrogram.levels.windows(2) {
            assert!(pair[1].partition.refines(&pair[0].partition));
            assert!(
                pair[1].partition.community_count() > pair[0].partition.community_count()
            );
        }
        // runs down to singletons without a cap
        assert_eq!(
            dendrogram.levels.last().unwrap().partition.community_count(),
            g.order()
        );
    }

    #[test]
    fn level_cap_respected() {
        let g = barbell();
        let dendrogram = girvan_newman(&g, Some(2)).unwrap();
        assert_eq!(dendrogram.levels.len(), 2);
    }

    #[test]
    fn components_never_merge() {
        let mut g = barbell();
        g.add_interaction("x", "y").unwrap();
        let dendrogram = girvan_newman(&g, None).unwrap();
        for level in &dendrogram.levels {
            // x and y never share a community with the barbell vertices
            let cx = level.partition.community_of(g.vertex("x").unwrap());
            assert_ne!(cx, level.partition.community_of(g.vertex("a0").unwrap()));
        }
    }

    #[test]
    fn deterministic() {
        let g = barbell();
        let d1 = girvan_newman(&g, None).unwrap();
        let d2 = girvan_newman(&g, None).unwrap();
        assert_eq!(d1.levels.len(), d2.levels.len());
        for (l1, l2) in d1.levels.iter().zip(&d2.levels) {
            assert_eq!(l1.partition, l2.partition);
        }
    }
}
