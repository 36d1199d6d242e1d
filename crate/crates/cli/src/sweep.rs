//! Parameter sweeps over one shared input.
//!
//! The input is loaded once (and its adjacency built once when the method
//! needs it); every cell then sparsifies it with one grid point. Per-cell
//! reports repeat the shared load and adjacency timings.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use rayon::prelude::*;
use sparsify_core::report::{round1, InputStats};
use sparsify_core::{
    degree_index, emit_report, save_graph, summarize_graph, summarize_with_adjacency, to_adjacency,
    AdjacencyList, DegreeIndex, Error, Graph, LoadStats, Method, Params, Phase, PhaseClock, Result,
    RunReport, SeedNodeSet, SparsifierConfig,
};

use crate::args::{extension, output_location, SweepArgs};
use crate::run::{load_into, load_seeds, params_for, preflight};

/// One grid point before the seed file is known.
#[derive(Clone, Debug)]
pub struct Cell {
    pub name: String,
    pub params: Params,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct Row {
    pub cell: String,
    pub edges: usize,
    pub edge_reduction_pct: f64,
    pub sparsification_seconds: f64,
}

pub struct Failure {
    pub cell: String,
    pub error: Error,
}

fn grid<T: Copy + PartialEq + std::fmt::Display>(name: &str, values: Option<&Vec<T>>, default: &[T]) -> Result<Vec<T>> {
    let values = values.map(Vec::as_slice).unwrap_or(default);
    if values.is_empty() {
        return Err(Error::validation(format!("empty grid for {name}")));
    }
    for (i, v) in values.iter().enumerate() {
        if values[..i].contains(v) {
            return Err(Error::validation(format!("grid for {name} lists {v} twice")));
        }
    }
    Ok(values.to_vec())
}

/// Expands the grid in row-major order. Grids for parameters of another
/// method are rejected rather than ignored.
pub fn expand(args: &SweepArgs, method: Method) -> Result<Vec<Cell>> {
    let foreign = [
        ("removal_ratio", args.removal_ratio.is_some() || args.bernoulli, Method::Random),
        ("k", args.k.is_some(), Method::KNeighbor),
        ("rho", args.rho.is_some(), Method::RankDegree),
        ("target_node_fraction", args.target_node_fraction.is_some(), Method::RankDegree),
        ("alpha", args.alpha.is_some(), Method::LocalDegree),
    ];
    if let Some((name, _, owner)) = foreign.iter().find(|(_, set, owner)| *set && *owner != method) {
        return Err(Error::validation(format!(
            "parameter {name} belongs to {owner}, not {method}"
        )));
    }

    let base = params_for(&args.seeds, None);
    let mut points: Vec<(String, Params)> = Vec::new();
    match method {
        Method::Random => {
            for r in grid("removal_ratio", args.removal_ratio.as_ref(), &[0.25, 0.5, 0.75])? {
                let p = Params {
                    removal_ratio: Some(r),
                    bernoulli: args.bernoulli,
                    ..base.clone()
                };
                points.push((format!("removal_ratio={r}"), p));
            }
        }
        Method::KNeighbor => {
            for k in grid("k", args.k.as_ref(), &[3, 5, 10])? {
                points.push((format!("k={k}"), Params { k: Some(k), ..base.clone() }));
            }
        }
        Method::RankDegree => {
            let targets = grid("target_node_fraction", args.target_node_fraction.as_ref(), &[0.25, 0.5, 0.75])?;
            for rho in grid("rho", args.rho.as_ref(), &[0.25, 0.5, 0.75])? {
                for &t in &targets {
                    let p = Params {
                        rho: Some(rho),
                        target_node_fraction: Some(t),
                        ..base.clone()
                    };
                    points.push((format!("rho={rho}__target_node_fraction={t}"), p));
                }
            }
        }
        Method::LocalDegree => {
            for a in grid("alpha", args.alpha.as_ref(), &[0.25, 0.5, 0.9])? {
                points.push((format!("alpha={a}"), Params { alpha: Some(a), ..base.clone() }));
            }
        }
    }

    let base_seed = args.seed.unwrap_or(0);
    Ok(points
        .into_iter()
        .enumerate()
        .map(|(i, (point, params))| {
            let seed = if args.seed_per_cell {
                base_seed.wrapping_add(i as u64)
            } else {
                base_seed
            };
            Cell {
                name: format!("{method}__{point}__seed={seed}"),
                params,
                seed,
            }
        })
        .collect())
}

struct Shared<'a> {
    graph: &'a Graph,
    load: LoadStats,
    adjacency: Option<(AdjacencyList, DegreeIndex)>,
    adjacency_time: Duration,
    seeds: Option<SeedNodeSet>,
    method: Method,
    out_dir: &'a Path,
    out_format: Option<crate::args::FileFormat>,
    threads: usize,
}

fn run_cell(shared: &Shared, cell: &Cell) -> Result<Row> {
    let mut params = cell.params.clone();
    params.seeds = shared.seeds.clone();
    let cfg = SparsifierConfig::from_params(shared.method, params, cell.seed)?;

    let mut clock = PhaseClock::start();
    clock.record(Phase::DatasetLoad, shared.load.read);
    clock.record(Phase::ToInternal, shared.load.canonicalize);
    clock.record(Phase::EdgeToAdjacency, shared.adjacency_time);
    let result = match &shared.adjacency {
        Some((adj, deg)) => summarize_with_adjacency(shared.graph, adj, deg, &cfg)?,
        None => summarize_graph(shared.graph, &cfg)?,
    };
    clock.absorb(&result.timing);
    let out = shared
        .out_dir
        .join(format!("{}.{}", cell.name, extension(shared.out_format)));
    let location = output_location(&out, shared.out_format);
    clock.time(Phase::Export, || save_graph(&result.graph, &location))?;

    let report = RunReport::from_run(
        shared.graph,
        InputStats::loaded(shared.graph, &shared.load),
        &result,
        clock.finish(),
        shared.threads,
    );
    emit_report(&report, &shared.out_dir.join(format!("{}.json", cell.name)))?;
    Ok(Row {
        cell: cell.name.clone(),
        edges: result.graph.num_edges(),
        edge_reduction_pct: round1(result.edge_reduction_pct),
        sparsification_seconds: report.timing.seconds(Phase::Sparsification),
    })
}

pub struct Outcome {
    pub rows: Vec<Row>,
    pub failures: Vec<Failure>,
    pub summary: PathBuf,
}

pub fn sweep(args: SweepArgs, threads: usize) -> Result<Outcome> {
    let method = args
        .method
        .ok_or_else(|| Error::validation("no method: give --method"))?;
    let out_dir = args
        .out_dir
        .clone()
        .ok_or_else(|| Error::validation("no output directory: give --out-dir"))?;
    let spec = args.input.spec()?;
    let cells = expand(&args, method)?;
    // Seed options are shared by all cells; check them once up front.
    preflight(method, &params_for(&args.seeds, None), &args.seeds)?;

    let mut clock = PhaseClock::start();
    let (graph, load) = load_into(&mut clock, &spec)?;
    let seeds = load_seeds(&args.seeds, &graph)?;
    let (adjacency, adjacency_time) = if method.needs_adjacency() {
        let start = std::time::Instant::now();
        let adj = to_adjacency(&graph);
        let deg = degree_index(&adj);
        (Some((adj, deg)), start.elapsed())
    } else {
        (None, Duration::ZERO)
    };
    fs::create_dir_all(&out_dir).map_err(|e| Error::io(&out_dir, e))?;

    let shared = Shared {
        graph: &graph,
        load,
        adjacency,
        adjacency_time,
        seeds,
        method,
        out_dir: &out_dir,
        out_format: args.output.out_format,
        threads,
    };
    let results: Vec<Result<Row>> = if args.concurrent {
        cells.par_iter().map(|c| run_cell(&shared, c)).collect()
    } else {
        cells.iter().map(|c| run_cell(&shared, c)).collect()
    };

    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (cell, result) in cells.iter().zip(results) {
        match result {
            Ok(row) => rows.push(row),
            Err(error) => failures.push(Failure {
                cell: cell.name.clone(),
                error,
            }),
        }
    }

    let summary = out_dir.join("summary.tsv");
    fs::write(&summary, summary_table(&rows)).map_err(|e| Error::io(&summary, e))?;
    let failures_path = out_dir.join("failures.tsv");
    if failures.is_empty() {
        let _ = fs::remove_file(&failures_path);
    } else {
        let mut text = String::from("cell\tclass\tmessage\n");
        for f in &failures {
            let _ = writeln!(text, "{}\t{}\t{}", f.cell, f.error.class(), f.error);
        }
        fs::write(&failures_path, text).map_err(|e| Error::io(&failures_path, e))?;
    }
    Ok(Outcome {
        rows,
        failures,
        summary,
    })
}

pub fn summary_table(rows: &[Row]) -> String {
    let mut text = String::from("cell\tedges\tedge_reduction_pct\tsparsification_seconds\n");
    for r in rows {
        let _ = writeln!(
            text,
            "{}\t{}\t{:.1}\t{:.3}",
            r.cell, r.edges, r.edge_reduction_pct, r.sparsification_seconds
        );
    }
    text
}
