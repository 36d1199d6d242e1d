use std::path::Path;

use sparsify_core::report::InputStats;
use sparsify_core::{
    emit_report, load_graph, load_seed_nodes, save_graph, summarize_graph, Error, Graph, LoadStats,
    Method, Params, Phase, PhaseClock, Result, RunReport, SeedNodeSet, SparsifierConfig,
};

use crate::args::{output_location, RunArgs, SeedArgs};

/// Builds `Params` for `method`. `seeds` is `None` until the graph (and so
/// the node count the seed file is checked against) is known.
pub fn params_for(seed_args: &SeedArgs, seeds: Option<SeedNodeSet>) -> Params {
    Params {
        seeds,
        random_seeds: seed_args.random_seeds,
        max_hops: seed_args.max_hops,
        ..Params::default()
    }
}

/// Rejects bad parameters before any file is read. A seed file stands in
/// as a one-node set; it is loaded and range-checked after the graph.
pub fn preflight(method: Method, params: &Params, seed_args: &SeedArgs) -> Result<()> {
    let mut probe = params.clone();
    if seed_args.seeds.is_some() {
        probe.seeds = Some(SeedNodeSet::new(vec![0]));
    }
    SparsifierConfig::from_params(method, probe, 0).map(|_| ())
}

pub fn load_seeds(seed_args: &SeedArgs, g: &Graph) -> Result<Option<SeedNodeSet>> {
    seed_args
        .seeds
        .as_deref()
        .map(|p| load_seed_nodes(p, g.num_nodes()))
        .transpose()
}

pub fn load_into(clock: &mut PhaseClock, spec: &sparsify_core::InputSpec) -> Result<(Graph, LoadStats)> {
    let (g, load) = load_graph(spec)?;
    clock.record(Phase::DatasetLoad, load.read);
    clock.record(Phase::ToInternal, load.canonicalize);
    Ok((g, load))
}

pub fn run(args: RunArgs, threads: usize) -> Result<()> {
    let method = args
        .method
        .ok_or_else(|| Error::validation("no method: give --method"))?;
    let out = args
        .out
        .clone()
        .ok_or_else(|| Error::validation("no output: give --out"))?;
    let spec = args.input.spec()?;
    let mut params = params_for(&args.seeds, None);
    params.removal_ratio = args.removal_ratio;
    params.bernoulli = args.bernoulli;
    params.k = args.k;
    params.rho = args.rho;
    params.target_node_fraction = args.target_node_fraction;
    params.alpha = args.alpha;
    preflight(method, &params, &args.seeds)?;

    let mut clock = PhaseClock::start();
    let (g, load) = load_into(&mut clock, &spec)?;
    params.seeds = load_seeds(&args.seeds, &g)?;
    let cfg = SparsifierConfig::from_params(method, params, args.seed.unwrap_or(0))?;

    let result = summarize_graph(&g, &cfg)?;
    clock.absorb(&result.timing);
    let location = output_location(&out, args.output.out_format);
    clock.time(Phase::Export, || save_graph(&result.graph, &location))?;

    let report = RunReport::from_run(&g, InputStats::loaded(&g, &load), &result, clock.finish(), threads);
    eprintln!(
        "{}: {} -> {} edges ({:.1}% reduction), sparsification {:.3}s",
        method,
        g.num_edges(),
        result.graph.num_edges(),
        report.output.edge_reduction_pct,
        report.timing.seconds(Phase::Sparsification)
    );
    write_report(&report, args.report.as_deref())
}

fn write_report(report: &RunReport, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => emit_report(report, p),
        None => {
            print!("{}", report.to_json());
            Ok(())
        }
    }
}
