//! Canonical undirected graph representations.
//!
//! A [`Graph`] stores each undirected edge once as `(min, max)`, sorted
//! lexicographically, with no self-loops and no duplicates. Sparsifiers that
//! need neighbourhoods work on an [`AdjacencyList`], which materialises both
//! directions of every edge in CSR layout.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense node identifier.
pub type NodeId = u32;

/// Canonical undirected edge, `0 <= .0 < .1 < num_nodes`.
pub type Edge = (NodeId, NodeId);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    num_nodes: usize,
    edges: Vec<Edge>,
}

/// Bookkeeping produced by [`canonicalize`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonStats {
    pub raw_edges: usize,
    pub self_loops: usize,
    pub duplicates: usize,
}

impl Graph {
    /// Builds a graph from edges that are already canonical and sorted.
    pub fn from_canonical(num_nodes: usize, edges: Vec<Edge>) -> Result<Self> {
        for (index, &(u, v)) in edges.iter().enumerate() {
            if u as usize >= num_nodes || v as usize >= num_nodes {
                return Err(Error::OutOfRange {
                    u: u.into(),
                    v: v.into(),
                    index,
                    num_nodes: num_nodes as u64,
                });
            }
            if u >= v {
                return Err(Error::NotCanonical {
                    index,
                    reason: "expected u < v",
                });
            }
        }
        if let Some(index) = edges.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::NotCanonical {
                index: index + 1,
                reason: "edges must be strictly increasing",
            });
        }
        Ok(Graph { num_nodes, edges })
    }

    /// For sparsifier output, which is sorted and canonical by construction.
    pub(crate) fn from_sorted_unchecked(num_nodes: usize, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|&(u, v)| u < v && (v as usize) < num_nodes));
        Graph { num_nodes, edges }
    }

    pub fn empty(num_nodes: usize) -> Self {
        Graph {
            num_nodes,
            edges: Vec::new(),
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn into_edges(self) -> Vec<Edge> {
        self.edges
    }

    pub fn contains_edge(&self, u: NodeId, v: NodeId) -> bool {
        let e = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&e).is_ok()
    }

    /// Per-node degree of this graph.
    pub fn degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.num_nodes];
        for &(u, v) in &self.edges {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        deg
    }

    /// Number of nodes incident to at least one edge.
    pub fn covered_nodes(&self) -> usize {
        let mut seen = vec![false; self.num_nodes];
        let mut count = 0;
        for &(u, v) in &self.edges {
            for x in [u, v] {
                if !std::mem::replace(&mut seen[x as usize], true) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Splits the edge list into source and destination arrays.
    pub fn to_arrays(&self) -> (Vec<NodeId>, Vec<NodeId>) {
        self.edges.iter().copied().unzip()
    }
}

/// Turns an arbitrary list of pairs into a canonical [`Graph`].
///
/// Each pair becomes `(min, max)`, self-loops are dropped and counted,
/// duplicates collapse. The first pair (in input order) referencing an id
/// `>= num_nodes` is reported.
pub fn canonicalize(raw_edges: &[(NodeId, NodeId)], num_nodes: usize) -> Result<(Graph, CanonStats)> {
    if num_nodes > NodeId::MAX as usize + 1 {
        return Err(crate::error::capacity(num_nodes as i128 - 1));
    }
    let bound = num_nodes as u64;
    if let Some((index, &(u, v))) = raw_edges
        .par_iter()
        .enumerate()
        .find_first(|(_, &(u, v))| u64::from(u) >= bound || u64::from(v) >= bound)
    {
        return Err(Error::OutOfRange {
            u: u.into(),
            v: v.into(),
            index,
            num_nodes: bound,
        });
    }

    let mut edges: Vec<Edge> = raw_edges
        .par_iter()
        .filter_map(|&(u, v)| {
            match u.cmp(&v) {
                std::cmp::Ordering::Less => Some((u, v)),
                std::cmp::Ordering::Greater => Some((v, u)),
                std::cmp::Ordering::Equal => None,
            }
        })
        .collect();
    let self_loops = raw_edges.len() - edges.len();
    edges.par_sort_unstable();
    let before = edges.len();
    edges.dedup();

    let stats = CanonStats {
        raw_edges: raw_edges.len(),
        self_loops,
        duplicates: before - edges.len(),
    };
    Ok((Graph { num_nodes, edges }, stats))
}

/// Symmetric neighbour lists in CSR layout. Every row is strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyList {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
}

impl AdjacencyList {
    pub fn num_nodes(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of directed entries, i.e. twice the undirected edge count.
    pub fn num_entries(&self) -> usize {
        self.targets.len()
    }

    #[inline]
    pub fn neighbors(&self, node: NodeId) -> &[NodeId] {
        let i = node as usize;
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    #[inline]
    pub fn degree(&self, node: NodeId) -> usize {
        let i = node as usize;
        self.offsets[i + 1] - self.offsets[i]
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.num_nodes()).map(|i| i as NodeId)
    }

    /// Canonical edges, recovered from the upper triangle.
    pub fn to_graph(&self) -> Graph {
        let edges = self
            .nodes()
            .flat_map(|u| {
                self.neighbors(u)
                    .iter()
                    .filter(move |&&v| v > u)
                    .map(move |&v| (u, v))
            })
            .collect();
        Graph {
            num_nodes: self.num_nodes(),
            edges,
        }
    }
}

/// Materialises reverse edges of `g` into an [`AdjacencyList`].
pub fn to_adjacency(g: &Graph) -> AdjacencyList {
    let n = g.num_nodes();
    let mut offsets = vec![0usize; n + 1];
    for &(u, v) in g.edges() {
        offsets[u as usize + 1] += 1;
        offsets[v as usize + 1] += 1;
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }

    // Edges are sorted, so for row i every (j, i) with j < i arrives before
    // every (i, k) with k > i, and both groups arrive in increasing order.
    let mut cursor = offsets[..n].to_vec();
    let mut targets = vec![0 as NodeId; 2 * g.num_edges()];
    for &(u, v) in g.edges() {
        targets[cursor[u as usize]] = v;
        cursor[u as usize] += 1;
        targets[cursor[v as usize]] = u;
        cursor[v as usize] += 1;
    }
    AdjacencyList { offsets, targets }
}

/// Original-graph degrees used for neighbour ranking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeIndex {
    degrees: Vec<u32>,
}

impl DegreeIndex {
    #[inline]
    pub fn degree_of(&self, node: NodeId) -> u32 {
        self.degrees[node as usize]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.degrees
    }

    /// Ranking key: higher degree first, then lower id.
    #[inline]
    pub(crate) fn rank_key(&self, node: NodeId) -> (std::cmp::Reverse<u32>, NodeId) {
        (std::cmp::Reverse(self.degree_of(node)), node)
    }
}

pub fn degree_index(adj: &AdjacencyList) -> DegreeIndex {
    DegreeIndex {
        degrees: adj
            .offsets
            .windows(2)
            .map(|w| (w[1] - w[0]) as u32)
            .collect(),
    }
}
