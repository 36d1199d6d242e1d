//! Hop-parallel Rank Degree.
//!
//! Each hop lets every current seed pick the top `max(1, floor(rho * d_i))`
//! neighbours by original degree. Picked edges join the output (deduplicated)
//! and picked neighbours form the next frontier. Hops continue until the
//! output touches at least `target` vertices, so the last hop may overshoot.
//! Edges are never removed between hops. An empty frontier is replaced by
//! `|S|` uniformly random vertices, and `max_hops` bounds the whole loop.

use rand::seq::index;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rng::{stream, Domain};
use super::top_ranked;
use crate::graph::{AdjacencyList, DegreeIndex, Edge, NodeId};

/// How a Rank Degree run ended.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankDegreeTrace {
    pub hops: u32,
    /// Number of times an empty frontier was replaced by random vertices.
    pub fallback_reseeds: u32,
    /// Set when `max_hops` ran out before the target was reached.
    pub truncated: bool,
    pub target_nodes: usize,
    pub covered_nodes: usize,
}

pub struct RankDegreeParams {
    pub rho: f64,
    /// Target vertex count `x`.
    pub target: usize,
    pub max_hops: u32,
    pub seed: u64,
}

/// Neighbours a vertex of degree `d` selects per hop.
pub fn picks_for(degree: usize, rho: f64) -> usize {
    ((rho * degree as f64).floor() as usize).max(1).min(degree)
}

/// `count` distinct vertices for the frontier drawn at `stream_index`.
pub fn random_frontier(num_nodes: usize, count: usize, seed: u64, stream_index: u64) -> Vec<NodeId> {
    let mut rng = stream(seed, Domain::RankSeeds, stream_index);
    let mut ids: Vec<NodeId> = index::sample(&mut rng, num_nodes, count.min(num_nodes))
        .into_iter()
        .map(|i| i as NodeId)
        .collect();
    ids.sort_unstable();
    ids
}

/// Merges two sorted, deduplicated edge lists.
fn merge_sorted(a: Vec<Edge>, b: &[Edge]) -> Vec<Edge> {
    if b.is_empty() {
        return a;
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Runs Rank Degree from `initial_seeds` (sorted, deduplicated). The
/// fallback frontier size is `initial_seeds.len()`.
pub fn rank_degree_sparsify(
    adj: &AdjacencyList,
    deg: &DegreeIndex,
    initial_seeds: &[NodeId],
    params: &RankDegreeParams,
) -> (Vec<Edge>, RankDegreeTrace) {
    let n = adj.num_nodes();
    let mut covered = vec![false; n];
    let mut trace = RankDegreeTrace {
        target_nodes: params.target,
        ..Default::default()
    };
    let mut selected: Vec<Edge> = Vec::new();
    let mut seeds = initial_seeds.to_vec();

    while trace.covered_nodes < params.target {
        if trace.hops >= params.max_hops {
            trace.truncated = true;
            break;
        }

        let picks: Vec<(NodeId, NodeId)> = seeds
            .par_iter()
            .map_init(Vec::new, |scratch, &i| {
                let nbrs = adj.neighbors(i);
                top_ranked(nbrs, picks_for(nbrs.len(), params.rho), deg, scratch)
                    .iter()
                    .map(|&j| (i, j))
                    .collect::<Vec<_>>()
            })
            .flatten_iter()
            .collect();

        let mut hop_edges: Vec<Edge> = picks
            .par_iter()
            .map(|&(i, j)| if i < j { (i, j) } else { (j, i) })
            .collect();
        hop_edges.par_sort_unstable();
        hop_edges.dedup();
        for &(u, v) in &hop_edges {
            for x in [u, v] {
                if !std::mem::replace(&mut covered[x as usize], true) {
                    trace.covered_nodes += 1;
                }
            }
        }
        selected = merge_sorted(selected, &hop_edges);

        let mut next: Vec<NodeId> = picks.into_par_iter().map(|(_, j)| j).collect();
        next.par_sort_unstable();
        next.dedup();
        trace.hops += 1;

        if next.is_empty() {
            next = random_frontier(n, initial_seeds.len(), params.seed, trace.hops.into());
            trace.fallback_reseeds += 1;
        }
        seeds = next;
    }
    (selected, trace)
}
