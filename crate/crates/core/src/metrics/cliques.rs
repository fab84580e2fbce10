//! Maximum clique via Bron–Kerbosch with pivoting on the simple view.

use crate::graph::MultiGraph;

use super::MetricsError;

const WORD_BITS: usize = 64;

#[derive(Clone, PartialEq, Eq)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn empty(n: usize) -> Self {
        BitSet {
            words: vec![0; n.div_ceil(WORD_BITS)],
        }
    }

    fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    fn insert(&mut self, i: usize) {
        self.words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
    }

    fn remove(&mut self, i: usize) {
        self.words[i / WORD_BITS] &= !(1 << (i % WORD_BITS));
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn and(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn and_count(&self, other: &BitSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * WORD_BITS + tz)
            })
        })
    }
}

/// Size of the maximum clique.
pub fn clique_number(g: &MultiGraph) -> Result<usize, MetricsError> {
    let n = g.order();
    if n == 0 {
        return Err(MetricsError::EmptyGraph);
    }
    let s = g.simple();
    let mut adj: Vec<BitSet> = (0..n).map(|_| BitSet::empty(n)).collect();
    for v in g.vertices() {
        for w in s.neighbors(v) {
            adj[v as usize].insert(w as usize);
        }
    }
    let mut best = 1usize;
    bron_kerbosch(&adj, 0, BitSet::full(n), BitSet::empty(n), &mut best);
    Ok(best)
}

fn bron_kerbosch(adj: &[BitSet], r_size: usize, p: BitSet, x: BitSet, best: &mut usize) {
    if p.is_empty() {
        if x.is_empty() {
            *best = (*best).max(r_size);
        }
        return;
    }
    if r_size + p.count() <= *best {
        return; // cannot beat the best clique found so far
    }
    // pivot maximizing |P ∩ N(u)| over P ∪ X
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&u| p.and_count(&adj[u]))
        .expect("P is non-empty");
    let mut p = p;
    let mut x = x;
    let candidates: Vec<usize> = p
        .iter()
        .filter(|&v| !adj[pivot].contains(v))
        .collect();
    for v in candidates {
        bron_kerbosch(
            adj,
            r_size + 1,
            p.and(&adj[v]),
            x.and(&adj[v]),
            best,
        );
        p.remove(v);
        x.insert(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::MultiGraph;

    fn complete(n: usize) -> MultiGraph {
        let mut g = MultiGraph::new();
        for i in 0..n {
            for j in (i + 1)..n {
                g.add_interaction(&format!("v{i}"), &format!("v{j}")).unwrap();
            }
        }
        g
    }

    #[test]
    fn complete_graph() {
        assert_eq!(clique_number(&complete(5)).unwrap(), 5);
    }

    #[test]
    fn single_vertex() {
        let mut g = MultiGraph::new();
        g.intern("v");
        assert_eq!(clique_number(&g).unwrap(), 1);
    }

    #[test]
    fn empty_graph_is_error() {
        assert_eq!(
            clique_number(&MultiGraph::new()).unwrap_err(),
            MetricsError::EmptyGraph
        );
    }

    #[test]
    fn triangle_with_tail() {
        let mut g = MultiGraph::new();
        g.add_interaction("a", "b").unwrap();
        g.add_interaction("b", "c").unwrap();
        g.add_interaction("a", "c").unwrap();
        g.add_interaction("c", "d").unwrap();
        assert_eq!(clique_number(&g).unwrap(), 3);
    }

    #[test]
    fn complete_minus_perfect_matching() {
        // K_n minus a perfect matching has clique number n/2 for even n >= 4
        for n in [4usize, 6, 8, 10, 12] {
            let mut g = MultiGraph::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    // drop the matching edges (2k, 2k+1)
                    if j == i + 1 && i % 2 == 0 {
                        continue;
                    }
                    g.add_interaction(&format!("v{i}"), &format!("v{j}")).unwrap();
                }
            }
            assert_eq!(clique_number(&g).unwrap(), n / 2, "n = {n}");
        }
    }

    #[test]
    fn multiplicities_do_not_matter() {
        let mut g = complete(4);
        g.add_interactions("v0", "v1", 50).unwrap();
        assert_eq!(clique_number(&g).unwrap(), 4);
    }
}
