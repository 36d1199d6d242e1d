//! Graph ingestion and persistence.
//!
//! Three on-disk layouts are supported: CSV edge lists, paired `.npy`
//! source/destination arrays (the OGB raw layout) and a native binary edge
//! list. Every loader canonicalises its input, so reverse duplicates and
//! self-loops in the file are folded away and counted in [`LoadStats`].

mod csv;
pub mod native;
pub mod npy;
mod seeds;

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{canonicalize, Graph, NodeId};

pub use seeds::{load_seed_nodes, SeedNodeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFormat {
    CsvEdgeList,
    PairedBinaryArrays,
    NativeEdgeList,
}

/// Where a graph lives and in which layout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "format", rename_all = "kebab-case")]
pub enum GraphLocation {
    CsvEdgeList { path: PathBuf },
    PairedBinaryArrays { src: PathBuf, dst: PathBuf },
    NativeEdgeList { path: PathBuf },
}

impl GraphLocation {
    pub fn format(&self) -> GraphFormat {
        match self {
            GraphLocation::CsvEdgeList { .. } => GraphFormat::CsvEdgeList,
            GraphLocation::PairedBinaryArrays { .. } => GraphFormat::PairedBinaryArrays,
            GraphLocation::NativeEdgeList { .. } => GraphFormat::NativeEdgeList,
        }
    }

    /// Picks a layout from a path: `.csv`/`.tsv`/`.txt` are edge lists,
    /// anything else is the native format. Paired arrays need two paths and
    /// are never inferred.
    pub fn infer(path: impl Into<PathBuf>) -> Self {
        let path = path.into();
        match path.extension().and_then(|e| e.to_str()) {
            Some("csv" | "tsv" | "txt") => GraphLocation::CsvEdgeList { path },
            _ => GraphLocation::NativeEdgeList { path },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputSpec {
    #[serde(flatten)]
    pub location: GraphLocation,
    /// Explicit node count. When absent, `max id + 1` is used.
    #[serde(default)]
    pub num_nodes: Option<usize>,
}

impl InputSpec {
    pub fn new(location: GraphLocation) -> Self {
        InputSpec {
            location,
            num_nodes: None,
        }
    }

    pub fn with_num_nodes(mut self, n: usize) -> Self {
        self.num_nodes = Some(n);
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LoadStats {
    pub raw_edges: usize,
    pub self_loops: usize,
    pub duplicates: usize,
    /// File to raw id arrays.
    pub read: Duration,
    /// Raw arrays to canonical graph.
    pub canonicalize: Duration,
}

impl LoadStats {
    pub fn total(&self) -> Duration {
        self.read + self.canonicalize
    }
}

fn npy_ids(values: Vec<i64>, path: &Path) -> Result<Vec<NodeId>> {
    if let Some((offset, &bad)) = values
        .par_iter()
        .enumerate()
        .find_first(|(_, &v)| v < 0 || v > NodeId::MAX as i64)
    {
        return Err(if bad < 0 {
            Error::Format {
                path: path.to_path_buf(),
                message: format!("negative node id {bad} at element {offset}"),
            }
        } else {
            crate::error::capacity(bad as i128)
        });
    }
    Ok(values.into_par_iter().map(|v| v as NodeId).collect())
}

/// Raw pairs plus the node count the file itself declares, if any.
type Pairs = (Vec<(NodeId, NodeId)>, Option<usize>);

fn read_pairs(location: &GraphLocation) -> Result<Pairs> {
    match location {
        GraphLocation::CsvEdgeList { path } => Ok((csv::read(path)?, None)),
        GraphLocation::PairedBinaryArrays { src, dst } => {
            let (s, d) = rayon::join(|| npy::read_i64(src), || npy::read_i64(dst));
            let (s, d) = (s?, d?);
            if s.len() != d.len() {
                return Err(Error::Format {
                    path: dst.clone(),
                    message: format!(
                        "destination array has {} entries, source array {} has {}",
                        d.len(),
                        src.display(),
                        s.len()
                    ),
                });
            }
            let (s, d) = (npy_ids(s, src)?, npy_ids(d, dst)?);
            Ok((s.into_par_iter().zip(d).collect(), None))
        }
        GraphLocation::NativeEdgeList { path } => {
            let decoded = native::read(path)?;
            Ok((decoded.pairs, Some(decoded.num_nodes)))
        }
    }
}

/// Loads and canonicalises a graph.
pub fn load_graph(spec: &InputSpec) -> Result<(Graph, LoadStats)> {
    let t = Instant::now();
    let (pairs, stored_nodes) = read_pairs(&spec.location)?;
    let read = t.elapsed();

    let t = Instant::now();
    let num_nodes = match spec.num_nodes.or(stored_nodes) {
        Some(n) => n,
        None => pairs
            .par_iter()
            .map(|&(u, v)| u.max(v) as usize + 1)
            .max()
            .unwrap_or(0),
    };
    let (graph, canon) = canonicalize(&pairs, num_nodes)?;
    let stats = LoadStats {
        raw_edges: canon.raw_edges,
        self_loops: canon.self_loops,
        duplicates: canon.duplicates,
        read,
        canonicalize: t.elapsed(),
    };
    Ok((graph, stats))
}

/// Writes `g` in the layout of `location`. Output is a pure function of `g`.
pub fn save_graph(g: &Graph, location: &GraphLocation) -> Result<()> {
    match location {
        GraphLocation::CsvEdgeList { path } => csv::write(g, path),
        GraphLocation::PairedBinaryArrays { src, dst } => {
            let (s, d): (Vec<i64>, Vec<i64>) =
                g.edges().iter().map(|&(u, v)| (u as i64, v as i64)).unzip();
            npy::write_i64(src, &s)?;
            npy::write_i64(dst, &d)
        }
        GraphLocation::NativeEdgeList { path } => native::write(g, path),
    }
}
