//! Shared test support: a naive reference implementation of the four
//! sparsifiers and the random graph families used across test targets.
//!
//! The reference is single-threaded and uses ordered sets throughout. It
//! shares only the seed-derivation scheme with the library; neighbour sets,
//! degrees, ranking, union and hop bookkeeping are recomputed here from the
//! raw edge list.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::index;
use rand::Rng;
use sparsify_core::sparsify::rng::{mix, stream, unit_f64, Domain};
use sparsify_core::synth::{barabasi_albert, erdos_renyi};
use sparsify_core::{Graph, MethodConfig, NodeId, RandomSampling, SeedSource, SparsifierConfig};

pub type EdgeSet = BTreeSet<(NodeId, NodeId)>;

fn undirected(u: NodeId, v: NodeId) -> (NodeId, NodeId) {
    (u.min(v), u.max(v))
}

/// N(i) for every vertex, rebuilt from the edge list.
fn neighbour_sets(g: &Graph) -> Vec<BTreeSet<NodeId>> {
    let mut n = vec![BTreeSet::new(); g.num_nodes()];
    for &(u, v) in g.edges() {
        n[u as usize].insert(v);
        n[v as usize].insert(u);
    }
    n
}

/// Halves round up; `removal_pct` is the removal ratio in percent.
pub fn expected_retained(num_edges: usize, removal_pct: u64) -> usize {
    let kept_pct = 100 - removal_pct;
    ((2 * kept_pct * num_edges as u64 + 100) / 200) as usize
}

pub fn reference_random(g: &Graph, removal_ratio: f64, seed: u64) -> EdgeSet {
    let e = g.num_edges();
    // Exact decimal handling: ratios in tests are whole percentages.
    let pct = (removal_ratio * 100.0).round() as u64;
    assert!((removal_ratio * 100.0 - pct as f64).abs() < 1e-9, "use whole percentages");
    let m = expected_retained(e, pct);
    let mut keyed: Vec<(u64, usize)> = (0..e).map(|i| (mix(seed, Domain::EdgeKey, i as u64), i)).collect();
    keyed.sort();
    keyed[..m].iter().map(|&(_, i)| g.edges()[i]).collect()
}

pub fn reference_bernoulli(g: &Graph, removal_ratio: f64, seed: u64) -> EdgeSet {
    let p = 1.0 - removal_ratio;
    let mut out = EdgeSet::new();
    for (i, &e) in g.edges().iter().enumerate() {
        let u = unit_f64(mix(seed, Domain::EdgeKey, i as u64));
        if u <= p {
            out.insert(e);
        }
    }
    out
}

pub fn reference_k_neighbor(g: &Graph, k: u32, seed: u64) -> EdgeSet {
    let nbrs = neighbour_sets(g);
    let mut out = EdgeSet::new();
    for (i, n_i) in nbrs.iter().enumerate() {
        let i = i as NodeId;
        let d = n_i.len() as u32;
        if d <= k {
            for &j in n_i {
                out.insert(undirected(i, j));
            }
        } else {
            // Partial Fisher–Yates over a copy of N(i).
            let mut pool: Vec<NodeId> = n_i.iter().copied().collect();
            let mut rng = stream(seed, Domain::KNeighbor, i.into());
            for t in 0..k {
                let r = rng.gen_range(t..d);
                pool.swap(t as usize, r as usize);
            }
            for &j in &pool[..k as usize] {
                out.insert(undirected(i, j));
            }
        }
    }
    out
}

/// N(i) sorted by degree descending, then id ascending.
fn ranked(n_i: &BTreeSet<NodeId>, nbrs: &[BTreeSet<NodeId>]) -> Vec<NodeId> {
    let mut v: Vec<NodeId> = n_i.iter().copied().collect();
    v.sort_by(|&a, &b| {
        nbrs[b as usize]
            .len()
            .cmp(&nbrs[a as usize].len())
            .then(a.cmp(&b))
    });
    v
}

pub fn reference_local_degree(g: &Graph, alpha: f64) -> EdgeSet {
    let nbrs = neighbour_sets(g);
    let mut out = EdgeSet::new();
    for (i, n_i) in nbrs.iter().enumerate() {
        let d = n_i.len();
        if d == 0 {
            continue;
        }
        let k = ((d as f64).powf(alpha).floor() as usize).max(1).min(d);
        for &j in ranked(n_i, &nbrs).iter().take(k) {
            out.insert(undirected(i as NodeId, j));
        }
    }
    out
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct RankDegreeRun {
    pub edges: EdgeSet,
    pub hops: u32,
    pub fallbacks: u32,
    pub truncated: bool,
}

fn random_nodes(n: usize, count: usize, seed: u64, stream_index: u64) -> BTreeSet<NodeId> {
    let mut rng = stream(seed, Domain::RankSeeds, stream_index);
    index::sample(&mut rng, n, count).into_iter().map(|i| i as NodeId).collect()
}

pub fn reference_rank_degree(
    g: &Graph,
    seeds: &SeedSource,
    rho: f64,
    target_fraction: f64,
    max_hops: u32,
    seed: u64,
) -> RankDegreeRun {
    let n = g.num_nodes();
    let nbrs = neighbour_sets(g);
    let x = (target_fraction * n as f64).ceil() as usize;
    let initial: BTreeSet<NodeId> = match seeds {
        SeedSource::Nodes(s) => s.ids().iter().copied().collect(),
        SeedSource::Random { count } => random_nodes(n, *count, seed, 0),
    };
    let s_len = initial.len();

    let mut run = RankDegreeRun::default();
    let mut current = initial;
    loop {
        let vertices: BTreeSet<NodeId> = run.edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        if vertices.len() >= x {
            break;
        }
        if run.hops == max_hops {
            run.truncated = true;
            break;
        }
        let mut selected = EdgeSet::new();
        let mut new_seeds = BTreeSet::new();
        for &i in &current {
            let n_i = &nbrs[i as usize];
            if n_i.is_empty() {
                continue;
            }
            let k = ((rho * n_i.len() as f64).floor() as usize).max(1);
            for &j in ranked(n_i, &nbrs).iter().take(k) {
                selected.insert(undirected(i, j));
                new_seeds.insert(j);
            }
        }
        run.edges.extend(selected);
        run.hops += 1;
        current = new_seeds;
        if current.is_empty() {
            current = random_nodes(n, s_len, seed, run.hops.into());
            run.fallbacks += 1;
        }
    }
    run
}

/// Reference output for any configuration.
pub fn reference(g: &Graph, cfg: &SparsifierConfig) -> EdgeSet {
    match &cfg.method {
        MethodConfig::Random {
            removal_ratio,
            sampling: RandomSampling::ExactCount,
        } => reference_random(g, *removal_ratio, cfg.seed),
        MethodConfig::Random {
            removal_ratio,
            sampling: RandomSampling::Bernoulli,
        } => reference_bernoulli(g, *removal_ratio, cfg.seed),
        MethodConfig::KNeighbor { k } => reference_k_neighbor(g, *k, cfg.seed),
        MethodConfig::LocalDegree { alpha } => reference_local_degree(g, *alpha),
        MethodConfig::RankDegree {
            rho,
            target_node_fraction,
            seeds,
            max_hops,
        } => {
            let hops = max_hops.unwrap_or_else(|| sparsify_core::sparsify::default_max_hops(g.num_nodes()));
            reference_rank_degree(g, seeds, *rho, *target_node_fraction, hops, cfg.seed).edges
        }
    }
}

pub fn edge_set(g: &Graph) -> EdgeSet {
    g.edges().iter().copied().collect()
}

/// A named random graph family member.
pub struct Sample {
    pub label: String,
    pub graph: Graph,
}

/// `count` graphs with `n <= 64`, cycling through Erdős–Rényi
/// p ∈ {0.05, 0.2, 0.5} and Barabási–Albert m ∈ {1, 3}.
pub fn small_graph_family(count: usize, base_seed: u64) -> Vec<Sample> {
    (0..count)
        .map(|t| {
            let seed = base_seed.wrapping_add(t as u64);
            let n = 8 + (mix(seed, Domain::EdgeKey, 99) % 57) as usize;
            match t % 5 {
                0 => ("er p=0.05", erdos_renyi(n, 0.05, seed)),
                1 => ("er p=0.2", erdos_renyi(n, 0.2, seed)),
                2 => ("er p=0.5", erdos_renyi(n, 0.5, seed)),
                3 => ("ba m=1", barabasi_albert(n, 1, seed)),
                _ => ("ba m=3", barabasi_albert(n, 3, seed)),
            }
        })
        .enumerate()
        .map(|(t, (label, graph))| Sample {
            label: format!("#{t} {label} n={}", graph.num_nodes()),
            graph,
        })
        .collect()
}

pub fn degrees_of(edges: &[(NodeId, NodeId)], n: usize) -> Vec<usize> {
    let mut d = vec![0; n];
    for &(u, v) in edges {
        d[u as usize] += 1;
        d[v as usize] += 1;
    }
    d
}

/// Runs `f` inside a dedicated rayon pool with `threads` workers.
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(f)
}
