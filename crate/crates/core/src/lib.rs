//! Parallel graph sparsification.
//!
//! Four sparsifiers reduce the edge set of an undirected graph while keeping
//! its node set:
//!
//! * **Random** keeps a uniform sample of the edges.
//! * **K-Neighbor** lets every vertex keep up to `k` random incident edges.
//! * **Rank Degree** grows a subgraph from seed vertices, hop by hop, along
//!   the highest-degree neighbours.
//! * **Local Degree** lets every vertex keep edges to its `d^alpha`
//!   highest-degree neighbours.
//!
//! All of them go through [`summarize_graph`], are parallelised with rayon
//! and produce the same output for a given seed whatever the thread count.
//!
//! ```
//! use sparsify_core::{canonicalize, summarize_graph, MethodConfig, SparsifierConfig};
//!
//! let (g, _) = canonicalize(&[(0u32, 1u32), (0, 2), (0, 3), (1, 2)], 4).unwrap();
//! let cfg = SparsifierConfig::new(MethodConfig::KNeighbor { k: 1 }, 42);
//! let result = summarize_graph(&g, &cfg).unwrap();
//! assert!(result.graph.num_edges() <= g.num_edges());
//! ```

pub mod error;
pub mod graph;
pub mod interchange;
pub mod io;
pub mod report;
pub mod sparsify;
pub mod synth;

pub use error::{Error, Result};
pub use graph::{canonicalize, degree_index, to_adjacency, AdjacencyList, DegreeIndex, Edge, Graph, NodeId};
pub use io::{load_graph, load_seed_nodes, save_graph, GraphLocation, InputSpec, LoadStats, SeedNodeSet};
pub use report::{compute_stats, emit_report, read_report, Phase, PhaseClock, RunReport, TimingBreakdown};
pub use sparsify::{
    summarize_graph, summarize_with_adjacency, Method, MethodConfig, Params, RandomSampling,
    SeedSource, SparsificationResult, SparsifierConfig,
};
