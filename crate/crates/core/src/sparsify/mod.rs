//! The four sparsifiers behind one entry point.
//!
//! [`summarize_graph`] dispatches on the [`MethodConfig`] variant. Random
//! sampling works on the edge list directly; the structure-aware methods
//! first build an [`AdjacencyList`], and that conversion is timed as part of
//! the run. All methods return a subgraph on the same node set whose edges
//! are a subset of the input's, and all are bitwise reproducible for a fixed
//! seed regardless of the rayon pool size.

mod config;
mod k_neighbor;
mod local_degree;
mod random;
mod rank_degree;
pub mod rng;

use rayon::prelude::*;

use crate::error::Result;
use crate::graph::{degree_index, to_adjacency, AdjacencyList, DegreeIndex, Edge, Graph, NodeId};
use crate::report::{edge_reduction_pct, Phase, PhaseClock, TimingBreakdown};

pub use config::{
    default_max_hops, target_size, Method, MethodConfig, Params, RandomSampling, SeedSource,
    SparsifierConfig, DEFAULT_ALPHA, DEFAULT_K, DEFAULT_REMOVAL_RATIO, DEFAULT_RHO,
    DEFAULT_TARGET_NODE_FRACTION,
};
pub use k_neighbor::k_neighbor_sparsify;
pub use local_degree::{local_degree_sparsify, picks_for as local_degree_picks};
pub use random::{bernoulli_sparsify, random_sparsify, retained_count};
pub use rank_degree::{
    picks_for as rank_degree_picks, random_frontier, rank_degree_sparsify, RankDegreeParams,
    RankDegreeTrace,
};

#[derive(Clone, Debug, PartialEq)]
pub struct SparsificationResult {
    pub graph: Graph,
    /// `100 * (1 - |E'| / |E|)`, unrounded.
    pub edge_reduction_pct: f64,
    /// Vertices incident to at least one retained edge.
    pub node_coverage: usize,
    /// Only `edge_to_adjacency` and `sparsification` are measured here.
    pub timing: TimingBreakdown,
    pub config: SparsifierConfig,
    pub rank_degree: Option<RankDegreeTrace>,
}

/// The `k` best neighbours by (degree desc, id asc), in no particular order.
pub(crate) fn top_ranked<'a>(
    nbrs: &'a [NodeId],
    k: usize,
    deg: &DegreeIndex,
    scratch: &'a mut Vec<NodeId>,
) -> &'a [NodeId] {
    if k >= nbrs.len() {
        return nbrs;
    }
    if k == 0 {
        return &[];
    }
    scratch.clear();
    scratch.extend_from_slice(nbrs);
    scratch.select_nth_unstable_by_key(k - 1, |&j| deg.rank_key(j));
    &scratch[..k]
}

/// Canonical, sorted, deduplicated union of per-vertex marks `(i, j)`.
pub(crate) fn union_of_marks(marks: Vec<(NodeId, NodeId)>) -> Vec<Edge> {
    let mut edges: Vec<Edge> = marks
        .into_par_iter()
        .map(|(i, j)| if i < j { (i, j) } else { (j, i) })
        .collect();
    edges.par_sort_unstable();
    edges.dedup();
    edges
}

/// Initial Rank Degree frontier. Random seeds come from stream 0; fallback
/// re-seeds use the number of completed hops as their stream index.
pub fn initial_seeds(source: &SeedSource, num_nodes: usize, seed: u64) -> Vec<NodeId> {
    match source {
        SeedSource::Nodes(s) => s.ids().to_vec(),
        SeedSource::Random { count } => random_frontier(num_nodes, *count, seed, 0),
    }
}

fn run_method(
    g: &Graph,
    structure: Option<(&AdjacencyList, &DegreeIndex)>,
    cfg: &SparsifierConfig,
) -> (Vec<Edge>, Option<RankDegreeTrace>) {
    let seed = cfg.seed;
    let structure = || structure.expect("structure-aware method without adjacency");
    match &cfg.method {
        MethodConfig::Random {
            removal_ratio,
            sampling: RandomSampling::ExactCount,
        } => (random_sparsify(g, *removal_ratio, seed), None),
        MethodConfig::Random {
            removal_ratio,
            sampling: RandomSampling::Bernoulli,
        } => (bernoulli_sparsify(g, *removal_ratio, seed), None),
        MethodConfig::KNeighbor { k } => (k_neighbor_sparsify(structure().0, *k, seed), None),
        MethodConfig::LocalDegree { alpha } => {
            let (adj, deg) = structure();
            (local_degree_sparsify(adj, deg, *alpha), None)
        }
        MethodConfig::RankDegree {
            rho,
            target_node_fraction,
            seeds,
            max_hops,
        } => {
            let (adj, deg) = structure();
            let n = g.num_nodes();
            let params = RankDegreeParams {
                rho: *rho,
                target: target_size(*target_node_fraction, n),
                max_hops: max_hops.unwrap_or_else(|| default_max_hops(n)),
                seed,
            };
            let start = initial_seeds(seeds, n, seed);
            let (edges, trace) = rank_degree_sparsify(adj, deg, &start, &params);
            (edges, Some(trace))
        }
    }
}

fn finish(
    g: &Graph,
    edges: Vec<Edge>,
    trace: Option<RankDegreeTrace>,
    clock: PhaseClock,
    cfg: &SparsifierConfig,
) -> SparsificationResult {
    let graph = Graph::from_sorted_unchecked(g.num_nodes(), edges);
    SparsificationResult {
        edge_reduction_pct: edge_reduction_pct(g.num_edges(), graph.num_edges()),
        node_coverage: graph.covered_nodes(),
        graph,
        timing: clock.finish(),
        config: cfg.clone(),
        rank_degree: trace,
    }
}

/// Unified entry point: sparsifies `g` according to `cfg`.
pub fn summarize_graph(g: &Graph, cfg: &SparsifierConfig) -> Result<SparsificationResult> {
    cfg.validate_for(g.num_nodes())?;
    let mut clock = PhaseClock::start();
    let (edges, trace) = if cfg.method.method().needs_adjacency() {
        let (adj, deg) = clock.time(Phase::EdgeToAdjacency, || {
            let adj = to_adjacency(g);
            let deg = degree_index(&adj);
            (adj, deg)
        });
        clock.time(Phase::Sparsification, || run_method(g, Some((&adj, &deg)), cfg))
    } else {
        clock.time(Phase::Sparsification, || run_method(g, None, cfg))
    };
    Ok(finish(g, edges, trace, clock, cfg))
}

/// Like [`summarize_graph`] with a prebuilt adjacency list of `g`.
pub fn summarize_with_adjacency(
    g: &Graph,
    adj: &AdjacencyList,
    deg: &DegreeIndex,
    cfg: &SparsifierConfig,
) -> Result<SparsificationResult> {
    cfg.validate_for(g.num_nodes())?;
    debug_assert_eq!(adj.num_entries(), 2 * g.num_edges());
    let mut clock = PhaseClock::start();
    let (edges, trace) = clock.time(Phase::Sparsification, || run_method(g, Some((adj, deg)), cfg));
    Ok(finish(g, edges, trace, clock, cfg))
}
