//! `sparsify`: command-line driver for the sparsifiers.
//!
//! Exit status is 0 on success and 1 on error, with a single
//! `error[<class>]: <message>` line on stderr. A sweep whose cells partly
//! failed exits with 2 after writing everything that succeeded.

mod args;
mod run;
mod sweep;

use std::process::ExitCode;

use clap::Parser;
use sparsify_core::synth::{barabasi_albert, erdos_renyi};
use sparsify_core::{save_graph, Error, Result};

use args::{output_location, Cli, Command, GenerateArgs, Model};

fn thread_count(requested: Option<usize>) -> Result<usize> {
    let threads = match requested {
        Some(0) => return Err(Error::validation("--threads must be at least 1")),
        Some(t) => t,
        None => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
    };
    Ok(threads)
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::validation(format!("cannot start {threads} worker threads: {e}")))?;
    Ok(pool.install(f))
}

fn generate(args: GenerateArgs) -> Result<()> {
    let g = match args.model {
        Model::Ba => {
            if args.m == 0 || args.m >= args.nodes.max(1) {
                return Err(Error::validation("ba needs 1 <= m < nodes"));
            }
            barabasi_albert(args.nodes, args.m, args.seed)
        }
        Model::Er => {
            if !(0.0..=1.0).contains(&args.p) {
                return Err(Error::validation("er needs 0 <= p <= 1"));
            }
            erdos_renyi(args.nodes, args.p, args.seed)
        }
    };
    save_graph(&g, &output_location(&args.out, args.out_format))?;
    eprintln!("{} nodes, {} edges", g.num_nodes(), g.num_edges());
    Ok(())
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Run(a) => {
            let a = a.resolve()?;
            let threads = thread_count(a.output.threads)?;
            in_pool(threads, || run::run(a, threads))??;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep(a) => {
            let a = a.resolve()?;
            let threads = thread_count(a.output.threads)?;
            let outcome = in_pool(threads, || sweep::sweep(a, threads))??;
            print!("{}", sweep::summary_table(&outcome.rows));
            for f in &outcome.failures {
                eprintln!("error[{}]: cell {}: {}", f.error.class(), f.cell, f.error);
            }
            eprintln!(
                "{} cells succeeded, {} failed; summary in {}",
                outcome.rows.len(),
                outcome.failures.len(),
                outcome.summary.display()
            );
            Ok(if outcome.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Generate(a) => {
            generate(a)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            let message = e.to_string().replace('\n', " ");
            eprintln!("error[{}]: {message}", e.class());
            ExitCode::FAILURE
        }
    }
}
