//! Undirected labeled multigraph with multiplicity-weighted edges.
//!
//! Vertices are interned character names; parallel edges are stored as a
//! single adjacency entry carrying a multiplicity count. All heavier
//! analysis (geodesics, cliques, clustering) runs on the collapsed
//! [`SimpleView`], while degree-like quantities keep multiplicities.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

/// Dense vertex identifier, local to one graph.
pub type VertexId = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    /// An interaction of a character with itself (after name normalization).
    #[error("self-interaction rejected: {name:?}")]
    SelfLoop { name: String },
    #[error("unknown vertex: {name:?}")]
    UnknownVertex { name: String },
}

/// Trim surrounding whitespace and collapse internal runs to single spaces.
/// Names are otherwise case-sensitive.
pub fn normalize_name(raw: &str) -> String {
    raw.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Undirected multigraph. Edge multiplicities encode repeated interactions;
/// `edge_total` is the multiplicity sum (the |E| reported for multigraphs).
#[derive(Debug, Clone, Default)]
pub struct MultiGraph {
    labels: Vec<String>,
    index: HashMap<String, VertexId>,
    adj: Vec<BTreeMap<VertexId, u32>>,
    edge_total: u64,
}

impl MultiGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of vertices (N).
    pub fn order(&self) -> usize {
        self.labels.len()
    }

    /// Sum of edge multiplicities (|E| counting repeated interactions).
    pub fn edge_total(&self) -> u64 {
        self.edge_total
    }

    /// Number of distinct adjacent pairs.
    pub fn simple_edge_count(&self) -> usize {
        self.adj.iter().map(BTreeMap::len).sum::<usize>() / 2
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v as usize]
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.labels.iter().map(String::as_str)
    }

    /// Look up a vertex by (normalized) name.
    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.index.get(&normalize_name(name)).copied()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.order() as VertexId).into_iter()
    }

    /// Intern a name, creating the vertex on first sight.
    pub fn intern(&mut self, name: &str) -> VertexId {
        let name = normalize_name(name);
        if let Some(&v) = self.index.get(&name) {
            return v;
        }
        let v = self.labels.len() as VertexId;
        self.labels.push(name.clone());
        self.index.insert(name, v);
        self.adj.push(BTreeMap::new());
        v
    }

    /// Record one interaction between two characters, creating vertices on
    /// first sight. Self-interactions are rejected so data errors surface.
    pub fn add_interaction(&mut self, a: &str, b: &str) -> Result<(), GraphError> {
        self.add_interactions(a, b, 1)
    }

    /// Record `count` interactions at once.
    pub fn add_interactions(&mut self, a: &str, b: &str, count: u32) -> Result<(), GraphError> {
        let a = normalize_name(a);
        let b = normalize_name(b);
        if a == b {
            return Err(GraphError::SelfLoop { name: a });
        }
        if count == 0 {
            return Ok(());
        }
        let u = self.intern(&a);
        let v = self.intern(&b);
        *self.adj[u as usize].entry(v).or_insert(0) += count;
        *self.adj[v as usize].entry(u).or_insert(0) += count;
        self.edge_total += u64::from(count);
        Ok(())
    }

    /// Multiplicity of the edge between two vertex ids (0 if absent).
    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> u32 {
        self.adj
            .get(u as usize)
            .and_then(|n| n.get(&v).copied())
            .unwrap_or(0)
    }

    /// Multiplicity looked up by character names; absent vertices yield 0.
    pub fn multiplicity_by_name(&self, a: &str, b: &str) -> u32 {
        match (self.vertex(a), self.vertex(b)) {
            (Some(u), Some(v)) => self.multiplicity(u, v),
            _ => 0,
        }
    }

    /// Multiplicity-counting degree: sum of incident edge multiplicities.
    pub fn degree(&self, v: VertexId) -> u64 {
        self.adj[v as usize].values().map(|&m| u64::from(m)).sum()
    }

    /// Degree looked up by name.
    pub fn degree_by_name(&self, name: &str) -> Result<u64, GraphError> {
        let v = self.vertex(name).ok_or_else(|| GraphError::UnknownVertex {
            name: normalize_name(name),
        })?;
        Ok(self.degree(v))
    }

    /// Neighbors with multiplicities, ascending by neighbor id.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, u32)> + '_ {
        self.adj[v as usize].iter().map(|(&u, &m)| (u, m))
    }

    /// All distinct edges as (u, v, multiplicity) with u < v, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, u32)> + '_ {
        self.vertices().flat_map(move |u| {
            self.adj[u as usize]
                .range(u + 1..)
                .map(move |(&v, &m)| (u, v, m))
        })
    }

    /// Collapsed unweighted view of this graph.
    pub fn simple(&self) -> SimpleView<'_> {
        SimpleView { g: self }
    }

    /// Union by vertex name with multiplicities summed. The merge of an empty
    /// list is the empty graph.
    pub fn merge<'a, I>(graphs: I) -> MultiGraph
    where
        I: IntoIterator<Item = &'a MultiGraph>,
    {
        let mut out = MultiGraph::new();
        for g in graphs {
            // Intern vertices first so isolated vertices survive the merge.
            for name in g.labels() {
                out.intern(name);
            }
            for (u, v, m) in g.edges() {
                out.add_interactions(g.label(u), g.label(v), m)
                    .expect("source graph has no self-loops");
            }
        }
        out
    }
}

/// Read-only view with all multiplicities collapsed to 1.
#[derive(Debug, Clone, Copy)]
pub struct SimpleView<'g> {
    g: &'g MultiGraph,
}

impl<'g> SimpleView<'g> {
    pub fn order(&self) -> usize {
        self.g.order()
    }

    /// Distinct-neighbor degree. Always ≤ the multigraph degree.
    pub fn degree(&self, v: VertexId) -> usize {
        self.g.adj[v as usize].len()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + 'g {
        self.g.adj[v as usize].keys().copied()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.g.adj[u as usize].contains_key(&v)
    }

    pub fn edge_count(&self) -> usize {
        self.g.simple_edge_count()
    }
}

/// Assignment of every vertex to exactly one community.
///
/// Community ids are contiguous `0..k`, renumbered canonically in order of
/// first appearance by vertex id, so two partitions that agree up to label
/// permutation compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    assignment: Vec<u32>,
    community_count: u32,
}

impl Partition {
    /// Canonicalize an arbitrary labeling into contiguous community ids.
    pub fn from_labels<T: Copy + Eq + std::hash::Hash>(labels: &[T]) -> Partition {
        let mut remap: HashMap<T, u32> = HashMap::new();
        let mut assignment = Vec::with_capacity(labels.len());
        for &l in labels {
            let next = remap.len() as u32;
            let id = *remap.entry(l).or_insert(next);
            assignment.push(id);
        }
        Partition {
            assignment,
            community_count: remap.len() as u32,
        }
    }

    /// One community per vertex.
    pub fn singletons(n: usize) -> Partition {
        Partition {
            assignment: (0..n as u32).collect(),
            community_count: n as u32,
        }
    }

    /// All vertices in a single community.
    pub fn single(n: usize) -> Partition {
        Partition {
            assignment: vec![0; n],
            community_count: if n == 0 { 0 } else { 1 },
        }
    }

    /// Number of vertices covered.
    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn community_count(&self) -> usize {
        self.community_count as usize
    }

    pub fn community_of(&self, v: VertexId) -> u32 {
        self.assignment[v as usize]
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    /// Members of every community, indexed by community id.
    pub fn communities(&self) -> Vec<Vec<VertexId>> {
        let mut out = vec![Vec::new(); self.community_count as usize];
        for (v, &c) in self.assignment.iter().enumerate() {
            out[c as usize].push(v as VertexId);
        }
        out
    }

    /// Sizes of every community, indexed by community id.
    pub fn community_sizes(&self) -> Vec<usize> {
        let mut out = vec![0usize; self.community_count as usize];
        for &c in &self.assignment {
            out[c as usize] += 1;
        }
        out
    }

    /// True when every community of `self` is contained in one community of
    /// `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        if self.len() != coarser.len() {
            return false;
        }
        let mut seen: HashMap<u32, u32> = HashMap::new();
        for (v, &c) in self.assignment.iter().enumerate() {
            let target = coarser.assignment[v];
            match seen.entry(c) {
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(target);
                }
                std::collections::hash_map::Entry::Occupied(e) => {
                    if *e.get() != target {
                        return false;
                    }
                }
            }
        }
        true
    }
}
