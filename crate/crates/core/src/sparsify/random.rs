//! Uniform edge sampling.
//!
//! Every edge gets a 64-bit key hashed from the global seed and its position
//! in the canonical edge list. Exact-count sampling keeps the `m` edges with
//! the smallest `(key, position)` pairs, which is a uniformly random
//! `m`-subset and does not depend on the thread count.

use rayon::prelude::*;

use super::rng::{mix, unit_f64, Domain};
use crate::graph::{Edge, Graph};

/// Number of edges kept by exact-count sampling, `round((1 - r) * |E|)`
/// with halves rounded up.
///
/// Products within a relative 1e-9 of a half-integer count as exact ties,
/// so a decimal ratio such as 0.3 rounds as written even though `1 - 0.3`
/// is not representable.
pub fn retained_count(num_edges: usize, removal_ratio: f64) -> usize {
    let x = (1.0 - removal_ratio) * num_edges as f64;
    let frac = x - x.floor();
    let kept = if (frac - 0.5).abs() <= 1e-9 * x.max(1.0) {
        x.floor() + 1.0
    } else {
        x.round()
    };
    (kept as usize).min(num_edges)
}

#[inline]
fn key(seed: u64, index: usize) -> u64 {
    mix(seed, Domain::EdgeKey, index as u64)
}

pub fn random_sparsify(g: &Graph, removal_ratio: f64, seed: u64) -> Vec<Edge> {
    let edges = g.edges();
    let m = retained_count(edges.len(), removal_ratio);
    if m == edges.len() {
        return edges.to_vec();
    }
    if m == 0 {
        return Vec::new();
    }

    let mut keys: Vec<u64> = (0..edges.len()).into_par_iter().map(|i| key(seed, i)).collect();
    let (below, &mut threshold, _) = keys.select_nth_unstable(m - 1);
    let strictly_below = below.iter().filter(|&&k| k < threshold).count();
    let ties_needed = m - strictly_below;
    drop(keys);

    // Keys equal to the threshold are taken in position order.
    let tie_positions: Vec<usize> = (0..edges.len())
        .into_par_iter()
        .filter(|&i| key(seed, i) == threshold)
        .collect();
    let last_tie = tie_positions[ties_needed - 1];

    edges
        .par_iter()
        .enumerate()
        .filter(|&(i, _)| {
            let k = key(seed, i);
            k < threshold || (k == threshold && i <= last_tie)
        })
        .map(|(_, &e)| e)
        .collect()
}

/// Keeps each edge independently with probability `1 - removal_ratio`.
pub fn bernoulli_sparsify(g: &Graph, removal_ratio: f64, seed: u64) -> Vec<Edge> {
    let p = 1.0 - removal_ratio;
    g.edges()
        .par_iter()
        .enumerate()
        .filter(|&(i, _)| unit_f64(key(seed, i)) <= p)
        .map(|(_, &e)| e)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::canonicalize;

    fn complete(n: u32) -> Graph {
        let mut raw = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                raw.push((u, v));
            }
        }
        canonicalize(&raw, n as usize).unwrap().0
    }

    fn with_edges(m: usize) -> Graph {
        let raw: Vec<(u32, u32)> = (0..m as u32).map(|i| (i, i + 1)).collect();
        canonicalize(&raw, m + 1).unwrap().0
    }

    #[test]
    fn exact_counts() {
        let g = with_edges(10);
        for seed in 0..50 {
            assert_eq!(random_sparsify(&g, 0.3, seed).len(), 7);
        }
        let g = with_edges(100);
        assert_eq!(random_sparsify(&g, 0.75, 1).len(), 25);
        assert_eq!(random_sparsify(&g, 0.0, 1), g.edges());
    }

    #[test]
    fn half_counts_round_up() {
        assert_eq!(retained_count(5, 0.3), 4);
        assert_eq!(retained_count(5, 0.5), 3);
        assert_eq!(retained_count(3, 0.5), 2);
        assert_eq!(retained_count(10, 0.3), 7);
        assert_eq!(retained_count(7, 0.25), 5);
        assert_eq!(retained_count(0, 0.25), 0);
        assert_eq!(retained_count(1, 0.0), 1);
    }

    #[test]
    fn output_is_a_sorted_subset() {
        let g = complete(12);
        let out = random_sparsify(&g, 0.5, 3);
        assert!(out.windows(2).all(|w| w[0] < w[1]));
        assert!(out.iter().all(|&(u, v)| g.contains_edge(u, v)));
    }

    #[test]
    fn nested_in_removal_ratio() {
        let g = complete(15);
        let small = random_sparsify(&g, 0.75, 9);
        let large = random_sparsify(&g, 0.25, 9);
        assert!(small.iter().all(|e| large.binary_search(e).is_ok()));
    }

    #[test]
    fn inclusion_is_uniform() {
        // 20 edges, keep 5: each edge should appear in ~25% of 4000 draws.
        let g = with_edges(20);
        let mut hits = [0u32; 20];
        for seed in 0..4000 {
            for (u, _) in random_sparsify(&g, 0.75, seed) {
                hits[u as usize] += 1;
            }
        }
        // Binomial(4000, 0.25): sd ≈ 27.4, allow ~5 sd.
        for h in hits {
            assert!((h as i64 - 1000).abs() < 140, "{hits:?}");
        }
    }

    #[test]
    fn bernoulli_rate() {
        let g = complete(100);
        let kept = bernoulli_sparsify(&g, 0.3, 11).len() as f64 / g.num_edges() as f64;
        assert!((kept - 0.7).abs() < 0.03, "{kept}");
        assert_eq!(bernoulli_sparsify(&g, 0.0, 11).len(), g.num_edges());
    }
}
