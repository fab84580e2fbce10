//! Newman's leading-eigenvector spectral bisection of the modularity
//! matrix, with multiplicity edge weights.

use crate::graph::{MultiGraph, Partition, VertexId};

use super::CommunityError;

const TOLERANCE: f64 = 1e-9;
const MAX_ITERATIONS: usize = 10_000;

/// Recursively bisect by the sign pattern of the leading eigenvector of the
/// (group-restricted) modularity matrix. A branch stops when the leading
/// eigenvalue is non-positive or when the proposed split does not increase
/// modularity.
pub fn leading_eigenvector(g: &MultiGraph) -> Result<Partition, CommunityError> {
    if g.edge_total() == 0 {
        return Err(CommunityError::NoEdges);
    }
    let n = g.order();
    let m2 = 2.0 * g.edge_total() as f64;
    let strength: Vec<f64> = g.vertices().map(|v| g.degree(v) as f64).collect();
    let mut labels = vec![0u32; n];
    let mut next_label = 1u32;
    let mut stack: Vec<Vec<VertexId>> = vec![g.vertices().collect()];
    while let Some(group) = stack.pop() {
        if group.len() < 2 {
            continue;
        }
        let Some((plus, minus)) = try_split(g, &group, &strength, m2)? else {
            continue;
        };
        // reuse the current label for one side, a fresh one for the other
        for &v in &minus {
            labels[v as usize] = next_label;
        }
        next_label += 1;
        stack.push(plus);
        stack.push(minus);
    }
    Ok(Partition::from_labels(&labels))
}

/// Attempt to bisect `group`. Returns `None` when the group is spectrally
/// indivisible or the split would not raise Q.
fn try_split(
    g: &MultiGraph,
    group: &[VertexId],
    strength: &[f64],
    m2: f64,
) -> Result<Option<(Vec<VertexId>, Vec<VertexId>)>, CommunityError> {
    let k = group.len();
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &v) in group.iter().enumerate() {
        pos[v as usize] = i;
    }
    let k_group: f64 = group.iter().map(|&v| strength[v as usize]).sum();
    // diag_i = Σ_{l∈group} B_il, subtracted so rows of the restricted
    // matrix sum to zero
    let mut diag = vec![0.0f64; k];
    let mut internal_strength = vec![0.0f64; k];
    for (i, &v) in group.iter().enumerate() {
        let mut a_in = 0.0;
        for (w, m) in g.neighbors(v) {
            if pos[w as usize] != usize::MAX {
                a_in += f64::from(m);
            }
        }
        internal_strength[i] = a_in;
        diag[i] = a_in - strength[v as usize] * k_group / m2;
    }
    // Gershgorin-style shift keeping the spectrum non-negative
    let shift = group
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            2.0 * (internal_strength[i] + strength[v as usize] * k_group / m2)
                + strength[v as usize] * strength[v as usize] / m2
        })
        .fold(0.0f64, f64::max);

    let apply = |x: &[f64], y: &mut [f64]| {
        let weighted: f64 = group
            .iter()
            .enumerate()
            .map(|(i, &v)| strength[v as usize] * x[i])
            .sum();
        for (i, &v) in group.iter().enumerate() {
            let mut acc = 0.0;
            for (w, m) in g.neighbors(v) {
                let j = pos[w as usize];
                if j != usize::MAX {
                    acc += f64::from(m) * x[j];
                }
            }
            y[i] = acc - strength[v as usize] * weighted / m2 - diag[i] * x[i];
        }
    };

    // deterministic pseudo-random start vector
    let mut x: Vec<f64> = group
        .iter()
        .map(|&v| {
            let h = (u64::from(v) + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15);
            0.5 + (h >> 40) as f64 / (1u64 << 25) as f64
        })
        .collect();
    let mut y = vec![0.0f64; k];
    let mut converged = false;
    for _ in 0..MAX_ITERATIONS {
        apply(&x, &mut y);
        for (yi, xi) in y.iter_mut().zip(&x) {
            *yi += shift * xi;
        }
        let norm = y.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        if norm == 0.0 {
            return Ok(None); // null matrix: indivisible
        }
        for yi in y.iter_mut() {
            *yi /= norm;
        }
        let diff = x
            .iter()
            .zip(&y)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        std::mem::swap(&mut x, &mut y);
        if diff < TOLERANCE {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(CommunityError::NonConvergence {
            iterations: MAX_ITERATIONS,
        });
    }
    // Rayleigh quotient of the unshifted matrix
    apply(&x, &mut y);
    let xx: f64 = x.iter().map(|v| v * v).sum();
    let lambda = x.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>() / xx;
    if lambda <= TOLERANCE * (1.0 + shift) {
        return Ok(None);
    }
    let s: Vec<f64> = x.iter().map(|&v| if v > 0.0 { 1.0 } else { -1.0 }).collect();
    // ΔQ of the bisection: sᵀ B^(g) s / 4m
    apply(&s, &mut y);
    let delta_q = s.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>() / (2.0 * m2);
    if delta_q <= TOLERANCE {
        return Ok(None);
    }
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for (i, &v) in group.iter().enumerate() {
        if s[i] > 0.0 {
            plus.push(v);
        } else {
            minus.push(v);
        }
    }
    if plus.is_empty() || minus.is_empty() {
        return Ok(None);
    }
    Ok(Some((plus, minus)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::community::modularity;
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
    fn complete_graph_is_one_community() {
        let g = complete(6);
        let p = leading_eigenvector(&g).unwrap();
        assert_eq!(p.community_count(), 1);
    }

    #[test]
    fn two_disjoint_cliques_split() {
        let mut g = MultiGraph::new();
        for group in ["a", "b"] {
            for i in 0..4 {
                for j in (i + 1)..4 {
                    g.add_interaction(&format!("{group}{i}"), &format!("{group}{j}"))
                        .unwrap();
                }
            }
        }
        let p = leading_eigenvector(&g).unwrap();
        assert_eq!(p.community_count(), 2);
        assert_eq!(
            p.community_of(g.vertex("a0").unwrap()),
            p.community_of(g.vertex("a3").unwrap())
        );
    }

    #[test]
    fn barbell_splits_at_bridge() {
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
        let p = leading_eigenvector(&g).unwrap();
        assert_eq!(p.community_count(), 2);
        let q = modularity(&g, &p).unwrap();
        assert!(q > 0.3, "q = {q}");
    }

    #[test]
    fn deterministic() {
        let mut g = complete(5);
        g.add_interaction("v0", "w0").unwrap();
        g.add_interaction("w0", "w1").unwrap();
        g.add_interaction("w1", "w2").unwrap();
        let p1 = leading_eigenvector(&g).unwrap();
        let p2 = leading_eigenvector(&g).unwrap();
        assert_eq!(p1, p2);
    }

    #[test]
    fn no_edges_is_error() {
        let mut g = MultiGraph::new();
        g.intern("x");
        assert_eq!(
            leading_eigenvector(&g).unwrap_err(),
            CommunityError::NoEdges
        );
    }
}
