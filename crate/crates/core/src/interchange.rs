//! In-memory array interface for embedding the sparsifiers in host
//! pipelines (the surface a Python extension wraps).
//!
//! Inputs are plain source/destination id arrays under the same undirected
//! convention as the file loaders. Ingress (arrays to canonical graph) is
//! timed as `to_internal` and egress (graph to arrays) as `export`.

use crate::error::{Error, Result};
use crate::graph::{canonicalize, NodeId};
use crate::report::{InputStats, Phase, PhaseClock, RunReport};
use crate::sparsify::{summarize_graph, SparsifierConfig};

#[derive(Clone, Debug, PartialEq)]
pub struct ArrayOutput {
    pub src: Vec<i64>,
    pub dst: Vec<i64>,
    pub report: RunReport,
}

fn to_ids(values: &[i64], side: &str) -> Result<Vec<NodeId>> {
    values
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            if v < 0 {
                Err(Error::validation(format!("{side}[{i}] is negative ({v})")))
            } else {
                NodeId::try_from(v).map_err(|_| crate::error::capacity(v.into()))
            }
        })
        .collect()
}

/// Sparsifies the graph given by `src[i] - dst[i]` edges. `num_nodes`
/// defaults to `max id + 1`.
pub fn summarize_arrays(
    src: &[i64],
    dst: &[i64],
    num_nodes: Option<usize>,
    cfg: &SparsifierConfig,
) -> Result<ArrayOutput> {
    if src.len() != dst.len() {
        return Err(Error::validation(format!(
            "source array has {} entries, destination array has {}",
            src.len(),
            dst.len()
        )));
    }
    let mut clock = PhaseClock::start();
    clock.begin(Phase::ToInternal);
    let ingress = (|| {
        let pairs: Vec<(NodeId, NodeId)> = to_ids(src, "src")?.into_iter().zip(to_ids(dst, "dst")?).collect();
        let n = num_nodes.unwrap_or_else(|| {
            pairs
                .iter()
                .map(|&(u, v)| u.max(v) as usize + 1)
                .max()
                .unwrap_or(0)
        });
        canonicalize(&pairs, n)
    })();
    clock.end();
    let (graph, canon) = ingress?;

    let result = summarize_graph(&graph, cfg)?;
    clock.absorb(&result.timing);

    let (out_src, out_dst) = clock.time(Phase::Export, || {
        result
            .graph
            .edges()
            .iter()
            .map(|&(u, v)| (u as i64, v as i64))
            .unzip()
    });

    let input_stats = InputStats {
        raw_edges: canon.raw_edges,
        self_loops_dropped: canon.self_loops,
        duplicates_collapsed: canon.duplicates,
        ..InputStats::of(&graph)
    };
    let report = RunReport::from_run(
        &graph,
        input_stats,
        &result,
        clock.finish(),
        rayon::current_num_threads(),
    );
    Ok(ArrayOutput {
        src: out_src,
        dst: out_dst,
        report,
    })
}
