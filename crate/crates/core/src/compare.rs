//! Partition similarity and partition quality: NMI, adjusted Rand index,
//! mixing parameter, and embeddedness.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{MultiGraph, Partition};

#[derive(Debug, Error, PartialEq)]
pub enum CompareError {
    #[error("partitions cover different vertex sets ({left} vs {right} vertices)")]
    VertexSetMismatch { left: usize, right: usize },
    #[error("partition covers {got} vertices but the graph has {want}")]
    PartitionMismatch { got: usize, want: usize },
    #[error("every vertex is isolated; the mixing parameter is undefined")]
    AllIsolated,
    #[error("community {id} does not exist (partition has {count})")]
    NoSuchCommunity { id: u32, count: usize },
    #[error("community {id} has no incident edges")]
    NoIncidentEdges { id: u32 },
}

/// Cell counts |X_i ∩ Y_j| between two partitions of the same vertex set,
/// with marginals.
#[derive(Debug, Clone)]
pub struct ConfusionTable {
    pub cells: BTreeMap<(u32, u32), u64>,
    pub left_sizes: Vec<u64>,
    pub right_sizes: Vec<u64>,
    pub total: u64,
}

impl ConfusionTable {
    pub fn new(p1: &Partition, p2: &Partition) -> Result<ConfusionTable, CompareError> {
        if p1.len() != p2.len() {
            return Err(CompareError::VertexSetMismatch {
                left: p1.len(),
                right: p2.len(),
            });
        }
        let mut cells: BTreeMap<(u32, u32), u64> = BTreeMap::new();
        for (a, b) in p1.assignment().iter().zip(p2.assignment()) {
            *cells.entry((*a, *b)).or_insert(0) += 1;
        }
        let left_sizes = p1.community_sizes().iter().map(|&s| s as u64).collect();
        let right_sizes = p2.community_sizes().iter().map(|&s| s as u64).collect();
        Ok(ConfusionTable {
            cells,
            left_sizes,
            right_sizes,
            total: p1.len() as u64,
        })
    }

    fn entropy(sizes: &[u64], n: f64) -> f64 {
        sizes
            .iter()
            .filter(|&&s| s > 0)
            .map(|&s| {
                let p = s as f64 / n;
                -p * p.ln()
            })
            .sum()
    }

    fn mutual_information(&self) -> f64 {
        let n = self.total as f64;
        self.cells
            .iter()
            .map(|(&(x, y), &c)| {
                let joint = c as f64 / n;
                joint
                    * (c as f64 * n
                        / (self.left_sizes[x as usize] as f64 * self.right_sizes[y as usize] as f64))
                        .ln()
            })
            .sum()
    }
}

/// How the mutual information is normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NmiNormalization {
    /// 2·I / (H₁ + H₂)
    #[default]
    Mean,
    /// I / max(H₁, H₂)
    Max,
    /// I / √(H₁·H₂)
    Sqrt,
}

/// Normalized mutual information with the arithmetic-mean normalization:
/// 2·I(P₁;P₂) / (H(P₁)+H(P₂)), entropies in nats.
pub fn nmi(p1: &Partition, p2: &Partition) -> Result<f64, CompareError> {
    nmi_with(p1, p2, NmiNormalization::Mean)
}

/// NMI with a selectable normalization. When both partitions are trivial
/// (zero entropy) the value is 1; when exactly one is trivial it is 0.
pub fn nmi_with(
    p1: &Partition,
    p2: &Partition,
    normalization: NmiNormalization,
) -> Result<f64, CompareError> {
    if p1.len() == p2.len() && p1 == p2 {
        // canonical labeling makes equality relabel-invariant; identical
        // partitions score exactly 1
        return Ok(1.0);
    }
    let table = ConfusionTable::new(p1, p2)?;
    let n = table.total as f64;
    let h1 = ConfusionTable::entropy(&table.left_sizes, n);
    let h2 = ConfusionTable::entropy(&table.right_sizes, n);
    if h1 == 0.0 && h2 == 0.0 {
        return Ok(1.0);
    }
    if h1 == 0.0 || h2 == 0.0 {
        return Ok(0.0);
    }
    let i = table.mutual_information();
    let value = match normalization {
        NmiNormalization::Mean => 2.0 * i / (h1 + h2),
        NmiNormalization::Max => i / h1.max(h2),
        NmiNormalization::Sqrt => i / (h1 * h2).sqrt(),
    };
    Ok(value.clamp(0.0, 1.0))
}

/// Adjusted Rand index: pair-counting agreement corrected for chance.
/// Exactly 1 for identical partitions; when the denominator degenerates
/// (both partitions trivial) it is 1 if the partitions are identical and 0
/// otherwise.
pub fn adjusted_rand(p1: &Partition, p2: &Partition) -> Result<f64, CompareError> {
    let table = ConfusionTable::new(p1, p2)?;
    let comb2 = |x: u64| (x * x.saturating_sub(1) / 2) as f64;
    let index: f64 = table.cells.values().map(|&c| comb2(c)).sum();
    let left: f64 = table.left_sizes.iter().map(|&s| comb2(s)).sum();
    let right: f64 = table.right_sizes.iter().map(|&s| comb2(s)).sum();
    let pairs = comb2(table.total);
    if pairs == 0.0 {
        return Ok(1.0); // n < 2: identical by construction
    }
    let expected = left * right / pairs;
    let max_index = 0.5 * (left + right);
    let denominator = max_index - expected;
    if denominator.abs() < f64::EPSILON {
        // both partitions trivial (all-singletons or one community)
        return Ok(if p1 == p2 { 1.0 } else { 0.0 });
    }
    Ok((index - expected) / denominator)
}

/// Per-vertex mixing parameters μ_i = k_i^ext / k_i^tot and their mean,
/// with multiplicity-weighted degrees.
#[derive(Debug, Clone)]
pub struct MixingReport {
    pub mean: f64,
    /// μ per vertex; `None` for isolated vertices, which the mean excludes.
    pub per_vertex: Vec<Option<f64>>,
    pub excluded: usize,
}

/// Mean mixing parameter μ̄ of a partition.
pub fn mixing_parameter(g: &MultiGraph, p: &Partition) -> Result<f64, CompareError> {
    Ok(mixing_report(g, p)?.mean)
}

pub fn mixing_report(g: &MultiGraph, p: &Partition) -> Result<MixingReport, CompareError> {
    if p.len() != g.order() {
        return Err(CompareError::PartitionMismatch {
            got: p.len(),
            want: g.order(),
        });
    }
    let mut per_vertex = Vec::with_capacity(g.order());
    let mut sum = 0.0;
    let mut counted = 0usize;
    for v in g.vertices() {
        let mut external = 0u64;
        let mut total = 0u64;
        for (w, m) in g.neighbors(v) {
            total += u64::from(m);
            if p.community_of(w) != p.community_of(v) {
                external += u64::from(m);
            }
        }
        if total == 0 {
            per_vertex.push(None);
            continue;
        }
        let mu = external as f64 / total as f64;
        per_vertex.push(Some(mu));
        sum += mu;
        counted += 1;
    }
    if counted == 0 {
        return Err(CompareError::AllIsolated);
    }
    Ok(MixingReport {
        mean: sum / counted as f64,
        excluded: g.order() - counted,
        per_vertex,
    })
}

/// Embeddedness of one community: internal degree (twice the internal
/// multiplicity sum) over the total multiplicity degree of its members.
pub fn embeddedness(g: &MultiGraph, p: &Partition, community: u32) -> Result<f64, CompareError> {
    if p.len() != g.order() {
        return Err(CompareError::PartitionMismatch {
            got: p.len(),
            want: g.order(),
        });
    }
    if community as usize >= p.community_count() {
        return Err(CompareError::NoSuchCommunity {
            id: community,
            count: p.community_count(),
        });
    }
    let mut internal2 = 0u64;
    let mut total = 0u64;
    for v in g.vertices().filter(|&v| p.community_of(v) == community) {
        for (w, m) in g.neighbors(v) {
            total += u64::from(m);
            if p.community_of(w) == community {
                internal2 += u64::from(m); // both endpoints visit the edge
            }
        }
    }
    if total == 0 {
        return Err(CompareError::NoIncidentEdges { id: community });
    }
    Ok(internal2 as f64 / total as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{MultiGraph, Partition};

    #[test]
    fn nmi_identity() {
        let p = Partition::from_labels(&[0u32, 0, 1, 1, 2, 2]);
        assert_eq!(nmi(&p, &p).unwrap(), 1.0);
    }

    #[test]
    fn nmi_frozen_hand_value() {
        // P1 = {ab|cd|ef}, P2 = {ab|cdef}; value computed from the
        // entropy formula before this module existed
        let p1 = Partition::from_labels(&[0u32, 0, 1, 1, 2, 2]);
        let p2 = Partition::from_labels(&[0u32, 0, 1, 1, 1, 1]);
        let value = nmi(&p1, &p2).unwrap();
        assert!((value - 0.733680436651211).abs() < 1e-12, "value = {value}");
        let sqrt = nmi_with(&p1, &p2, NmiNormalization::Sqrt).unwrap();
        assert!((sqrt - 0.7611702597222879).abs() < 1e-12);
        let max = nmi_with(&p1, &p2, NmiNormalization::Max).unwrap();
        assert!((max - 0.579380164285695).abs() < 1e-12);
    }

    #[test]
    fn nmi_label_invariance() {
        let p1 = Partition::from_labels(&[5u32, 5, 9, 9, 1, 1]);
        let p2 = Partition::from_labels(&[0u32, 0, 1, 1, 2, 2]);
        assert_eq!(nmi(&p1, &p2).unwrap(), 1.0);
    }

    #[test]
    fn nmi_zero_entropy_conventions() {
        let trivial = Partition::single(4);
        let other = Partition::from_labels(&[0u32, 0, 1, 1]);
        assert_eq!(nmi(&trivial, &trivial).unwrap(), 1.0);
        assert_eq!(nmi(&trivial, &other).unwrap(), 0.0);
        assert_eq!(nmi(&other, &trivial).unwrap(), 0.0);
    }

    #[test]
    fn nmi_symmetry() {
        let p1 = Partition::from_labels(&[0u32, 0, 1, 2, 2, 1]);
        let p2 = Partition::from_labels(&[0u32, 1, 1, 2, 2, 2]);
        assert_eq!(nmi(&p1, &p2).unwrap(), nmi(&p2, &p1).unwrap());
    }

    #[test]
    fn nmi_mismatched_sets_rejected() {
        let p1 = Partition::single(3);
        let p2 = Partition::single(4);
        assert!(matches!(
            nmi(&p1, &p2),
            Err(CompareError::VertexSetMismatch { .. })
        ));
    }

    #[test]
    fn ari_identity_and_symmetry() {
        let p1 = Partition::from_labels(&[0u32, 0, 1, 1, 2, 2]);
        let p2 = Partition::from_labels(&[0u32, 1, 1, 2, 2, 2]);
        assert_eq!(adjusted_rand(&p1, &p1).unwrap(), 1.0);
        assert_eq!(
            adjusted_rand(&p1, &p2).unwrap(),
            adjusted_rand(&p2, &p1).unwrap()
        );
    }

    #[test]
    fn ari_singletons_vs_one_community() {
        let p1 = Partition::singletons(4);
        let p2 = Partition::single(4);
        assert_eq!(adjusted_rand(&p1, &p2).unwrap(), 0.0);
    }

    #[test]
    fn ari_trivial_pairs() {
        let s = Partition::singletons(4);
        assert_eq!(adjusted_rand(&s, &s).unwrap(), 1.0);
        let one = Partition::single(4);
        assert_eq!(adjusted_rand(&one, &one).unwrap(), 1.0);
    }

    fn fixture() -> (MultiGraph, Partition) {
        // two triangles joined by one bridge, split at the bridge
        let mut g = MultiGraph::new();
        for (a, b) in [("a", "b"), ("b", "c"), ("a", "c"), ("x", "y"), ("y", "z"), ("x", "z")] {
            g.add_interaction(a, b).unwrap();
        }
        g.add_interactions("c", "x", 2).unwrap();
        let labels: Vec<u32> = g
            .vertices()
            .map(|v| u32::from("xyz".contains(g.label(v))))
            .collect();
        (g, Partition::from_labels(&labels))
    }

    #[test]
    fn mixing_single_community_is_zero() {
        let (g, _) = fixture();
        let p = Partition::single(g.order());
        assert_eq!(mixing_parameter(&g, &p).unwrap(), 0.0);
    }

    #[test]
    fn mixing_singletons_is_one() {
        let (g, _) = fixture();
        let p = Partition::singletons(g.order());
        assert_eq!(mixing_parameter(&g, &p).unwrap(), 1.0);
    }

    #[test]
    fn mixing_hand_counted() {
        let (g, p) = fixture();
        // degrees: a 2, b 2, c 4, x 4, y 2, z 2; external: c 2/4, x 2/4
        let expected = (0.0 + 0.0 + 0.5 + 0.5 + 0.0 + 0.0) / 6.0;
        let report = mixing_report(&g, &p).unwrap();
        assert!((report.mean - expected).abs() < 1e-12);
        assert_eq!(report.excluded, 0);
    }

    #[test]
    fn mixing_excludes_isolated_vertices() {
        let (mut g, _) = fixture();
        g.intern("loner");
        let p = Partition::single(g.order());
        let report = mixing_report(&g, &p).unwrap();
        assert_eq!(report.excluded, 1);
        assert_eq!(report.per_vertex[g.vertex("loner").unwrap() as usize], None);
        assert_eq!(report.mean, 0.0);
    }

    #[test]
    fn mixing_all_isolated_is_error() {
        let mut g = MultiGraph::new();
        g.intern("x");
        g.intern("y");
        let p = Partition::singletons(2);
        assert_eq!(
            mixing_report(&g, &p).unwrap_err(),
            CompareError::AllIsolated
        );
    }

    #[test]
    fn embeddedness_isolated_clique_is_one() {
        let (g, p) = fixture();
        let mut iso = MultiGraph::new();
        for (a, b) in [("a", "b"), ("b", "c"), ("a", "c"), ("x", "y")] {
            iso.add_interaction(a, b).unwrap();
        }
        let labels: Vec<u32> = iso
            .vertices()
            .map(|v| u32::from("xy".contains(iso.label(v))))
            .collect();
        let q = Partition::from_labels(&labels);
        assert_eq!(embeddedness(&iso, &q, 0).unwrap(), 1.0);
        // and on the bridged fixture it is strictly between 0 and 1
        let e = embeddedness(&g, &p, 0).unwrap();
        assert!(e > 0.0 && e < 1.0);
    }

    #[test]
    fn embeddedness_hand_counted() {
        let (g, p) = fixture();
        // community 0 = {a,b,c}: internal edges weight 3 -> internal degree 6;
        // total degree 2+2+4 = 8
        assert!((embeddedness(&g, &p, 0).unwrap() - 6.0 / 8.0).abs() < 1e-12);
    }

    #[test]
    fn embeddedness_external_only_vertex_is_zero() {
        let mut g = MultiGraph::new();
        g.add_interaction("in", "out").unwrap();
        let p = Partition::from_labels(&[0u32, 1]);
        assert_eq!(embeddedness(&g, &p, 0).unwrap(), 0.0);
    }

    #[test]
    fn embeddedness_errors() {
        let (g, p) = fixture();
        assert!(matches!(
            embeddedness(&g, &p, 9),
            Err(CompareError::NoSuchCommunity { .. })
        ));
        let mut with_loner = g.clone();
        with_loner.intern("loner");
        let labels: Vec<u32> = with_loner
            .vertices()
            .map(|v| match with_loner.label(v) {
                "loner" => 2,
                l if "xyz".contains(l) => 1,
                _ => 0,
            })
            .collect();
        let q = Partition::from_labels(&labels);
        assert!(matches!(
            embeddedness(&with_loner, &q, 2),
            Err(CompareError::NoIncidentEdges { .. })
        ));
    }

    #[test]
    fn embeddedness_complements_external_ratio() {
        let (g, p) = fixture();
        for c in 0..p.community_count() as u32 {
            let e = embeddedness(&g, &p, c).unwrap();
            let members: Vec<u32> = g
                .vertices()
                .filter(|&v| p.community_of(v) == c)
                .collect();
            let mut external = 0u64;
            let mut total = 0u64;
            for &v in &members {
                for (w, m) in g.neighbors(v) {
                    total += u64::from(m);
                    if p.community_of(w) != c {
                        external += u64::from(m);
                    }
                }
            }
            let external_ratio = external as f64 / total as f64;
            assert!((e + external_ratio - 1.0).abs() < 1e-12);
        }
    }
}
