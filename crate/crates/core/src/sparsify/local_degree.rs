use rayon::prelude::*;

use super::{top_ranked, union_of_marks};
use crate::graph::{AdjacencyList, DegreeIndex, Edge, NodeId};

/// `max(1, floor(d^alpha))`, capped at `d`. Zero for isolated vertices.
///
/// The power is taken in `f64`; a result one ulp below an exact integer is
/// floored as-is.
pub fn picks_for(degree: usize, alpha: f64) -> usize {
    if degree == 0 {
        return 0;
    }
    let k = (degree as f64).powf(alpha).floor() as usize;
    k.clamp(1, degree)
}

/// Each vertex marks edges to its `picks_for(d_i, alpha)` highest-degree
/// neighbours (ties to the lower id); an edge survives if either endpoint
/// marked it. Deterministic.
pub fn local_degree_sparsify(adj: &AdjacencyList, deg: &DegreeIndex, alpha: f64) -> Vec<Edge> {
    let marks: Vec<Edge> = (0..adj.num_nodes() as NodeId)
        .into_par_iter()
        .map_init(Vec::new, |scratch, i| {
            let nbrs = adj.neighbors(i);
            let k = picks_for(nbrs.len(), alpha);
            top_ranked(nbrs, k, deg, scratch)
                .iter()
                .map(|&j| (i, j))
                .collect::<Vec<_>>()
        })
        .flatten_iter()
        .collect();
    union_of_marks(marks)
}
