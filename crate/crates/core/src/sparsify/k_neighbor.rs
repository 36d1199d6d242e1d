use rand::Rng;
use rayon::prelude::*;

use super::rng::{stream, Domain};
use super::union_of_marks;
use crate::graph::{AdjacencyList, Edge, NodeId};

/// Positions of a uniform `k`-subset of `0..d`, drawn by a partial
/// Fisher–Yates shuffle. Grows `scratch` to `d` entries.
///
/// The first `k` draws do not depend on `k`, so the sample for `k` is a
/// prefix of the sample for any larger `k`.
pub(crate) fn sample_positions<'a, R: Rng>(
    rng: &mut R,
    d: u32,
    k: u32,
    scratch: &'a mut Vec<u32>,
) -> &'a [u32] {
    scratch.clear();
    scratch.extend(0..d);
    for t in 0..k {
        let j = rng.gen_range(t..d);
        scratch.swap(t as usize, j as usize);
    }
    &scratch[..k as usize]
}

/// Each vertex marks all of its edges when `d_i <= k`, otherwise `k` random
/// ones; an edge survives if either endpoint marked it.
pub fn k_neighbor_sparsify(adj: &AdjacencyList, k: u32, seed: u64) -> Vec<Edge> {
    let marks: Vec<Edge> = (0..adj.num_nodes() as NodeId)
        .into_par_iter()
        .map_init(Vec::new, |scratch, i| {
            let nbrs = adj.neighbors(i);
            let d = nbrs.len() as u32;
            if d <= k {
                nbrs.iter().map(|&j| (i, j)).collect::<Vec<_>>()
            } else {
                let mut rng = stream(seed, Domain::KNeighbor, i.into());
                sample_positions(&mut rng, d, k, scratch)
                    .iter()
                    .map(|&p| (i, nbrs[p as usize]))
                    .collect()
            }
        })
        .flatten_iter()
        .collect();
    union_of_marks(marks)
}
