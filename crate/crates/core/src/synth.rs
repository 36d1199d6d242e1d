//! Seeded random graph generators for tests and benchmarks.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{canonicalize, Graph, NodeId};

/// G(n, p): every pair is an edge independently with probability `p`.
/// Quadratic in `n`; meant for small graphs.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut raw = Vec::new();
    for u in 0..n as NodeId {
        for v in u + 1..n as NodeId {
            if rng.gen::<f64>() < p {
                raw.push((u, v));
            }
        }
    }
    canonicalize(&raw, n).expect("generated ids are in range").0
}

/// Preferential attachment: starts from a clique on `m + 1` vertices, then
/// each new vertex links to `m` distinct existing vertices chosen with
/// probability proportional to their degree. Always connected.
pub fn barabasi_albert(n: usize, m: usize, seed: u64) -> Graph {
    assert!(m >= 1, "attachment count must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let core = (m + 1).min(n);
    let mut raw: Vec<(NodeId, NodeId)> = Vec::with_capacity(n.saturating_sub(core) * m + core * core / 2);
    // Every edge endpoint, so sampling from it is degree-proportional.
    let mut endpoints: Vec<NodeId> = Vec::with_capacity(2 * raw.capacity());
    for u in 0..core as NodeId {
        for v in u + 1..core as NodeId {
            raw.push((u, v));
            endpoints.extend([u, v]);
        }
    }
    let mut targets: Vec<NodeId> = Vec::with_capacity(m);
    for new in core..n {
        targets.clear();
        while targets.len() < m {
            let t = endpoints[rng.gen_range(0..endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            raw.push((t, new as NodeId));
            endpoints.extend([t, new as NodeId]);
        }
    }
    canonicalize(&raw, n).expect("generated ids are in range").0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::to_adjacency;

    #[test]
    fn erdos_renyi_extremes() {
        assert_eq!(erdos_renyi(10, 0.0, 1).num_edges(), 0);
        assert_eq!(erdos_renyi(10, 1.0, 1).num_edges(), 45);
        assert_eq!(erdos_renyi(30, 0.3, 4), erdos_renyi(30, 0.3, 4));
    }

    #[test]
    fn barabasi_albert_edge_count_and_connectivity() {
        let (n, m) = (200, 3);
        let g = barabasi_albert(n, m, 9);
        assert_eq!(g.num_edges(), 6 + (n - 4) * m);
        let adj = to_adjacency(&g);
        let mut seen = vec![false; n];
        let mut stack = vec![0u32];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in adj.neighbors(u) {
                if !std::mem::replace(&mut seen[v as usize], true) {
                    stack.push(v);
                }
            }
        }
        assert!(seen.iter().all(|&s| s));
    }
}
