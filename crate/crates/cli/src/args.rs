//! Command-line surface and the optional TOML config file.
//!
//! Every flag may also come from the config file under its snake_case name
//! (`removal_ratio = 0.3`). A value given on the command line wins.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use sparsify_core::{Error, GraphLocation, InputSpec, Method, Result};

#[derive(Parser, Debug)]
#[command(name = "sparsify", version, about = "Parallel graph sparsification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sparsify one graph with one configuration.
    Run(RunArgs),
    /// Run a parameter grid for one method over a shared input.
    Sweep(SweepArgs),
    /// Write a seeded synthetic graph.
    Generate(GenerateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FileFormat {
    /// Two-column edge list, comma or tab separated.
    Csv,
    /// Paired `.npy` arrays of source and destination ids.
    Npy,
    /// Self-describing binary edge list.
    Native,
}

fn parse_method(s: &str) -> std::result::Result<Method, String> {
    s.parse::<Method>().map_err(|e| e.to_string())
}

#[derive(Args, Debug, Clone, Default)]
pub struct InputArgs {
    /// Input graph file (csv/tsv/txt are edge lists, anything else native).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Source id array (`.npy`), paired with --dst.
    #[arg(long, requires = "dst", conflicts_with = "input")]
    pub src: Option<PathBuf>,
    /// Destination id array (`.npy`), paired with --src.
    #[arg(long, requires = "src", conflicts_with = "input")]
    pub dst: Option<PathBuf>,
    /// Overrides the input layout inferred from the file name.
    #[arg(long, value_enum)]
    pub format: Option<FileFormat>,
    /// Explicit node count; defaults to max id + 1.
    #[arg(long)]
    pub num_nodes: Option<usize>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct SeedArgs {
    /// Rank Degree seed nodes, one id per line (or a `.npy` array).
    #[arg(long)]
    pub seeds: Option<PathBuf>,
    /// Rank Degree: draw this many seed nodes uniformly at random.
    #[arg(long)]
    pub random_seeds: Option<usize>,
    /// Rank Degree hop limit.
    #[arg(long)]
    pub max_hops: Option<u32>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct OutputArgs {
    /// Output layout; inferred from the output name when absent.
    #[arg(long, value_enum)]
    pub out_format: Option<FileFormat>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub threads: Option<usize>,
    /// TOML file supplying defaults for any flag.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct RunArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// random, k-neighbor, rank-degree or local-degree.
    #[arg(long, value_parser = parse_method)]
    pub method: Option<Method>,
    /// Random: fraction of edges to remove, in [0, 1) (default 0.3).
    #[arg(long)]
    pub removal_ratio: Option<f64>,
    /// Random: keep each edge independently instead of an exact count.
    #[arg(long)]
    pub bernoulli: bool,
    /// K-Neighbor: edges marked per node, at least 1 (default 5).
    #[arg(long)]
    pub k: Option<u32>,
    /// Rank Degree: fraction of each node's top-ranked neighbours taken per hop (default 0.5).
    #[arg(long)]
    pub rho: Option<f64>,
    /// Rank Degree: stop once this fraction of nodes is covered (default 0.25).
    #[arg(long)]
    pub target_node_fraction: Option<f64>,
    /// Local Degree: each node keeps its floor(d^alpha) highest-degree neighbours (default 0.5).
    #[arg(long)]
    pub alpha: Option<f64>,
    #[command(flatten)]
    pub seeds: SeedArgs,
    /// RNG seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Where to write the sparsified graph.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Where to write the JSON run report.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone, Default)]
pub struct SweepArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// random, k-neighbor, rank-degree or local-degree.
    #[arg(long, value_parser = parse_method)]
    pub method: Option<Method>,
    /// Grid values; defaults to 0.25,0.5,0.75.
    #[arg(long, num_args = 0.., value_delimiter = ',')]
    pub removal_ratio: Option<Vec<f64>>,
    /// Random: keep each edge independently instead of an exact count.
    #[arg(long)]
    pub bernoulli: bool,
    /// Grid values; defaults to 3,5,10.
    #[arg(long, num_args = 0.., value_delimiter = ',')]
    pub k: Option<Vec<u32>>,
    /// Grid values; defaults to 0.25,0.5,0.75.
    #[arg(long, num_args = 0.., value_delimiter = ',')]
    pub rho: Option<Vec<f64>>,
    /// Grid values; defaults to 0.25,0.5,0.75.
    #[arg(long, num_args = 0.., value_delimiter = ',')]
    pub target_node_fraction: Option<Vec<f64>>,
    /// Grid values; defaults to 0.25,0.5,0.9.
    #[arg(long, num_args = 0.., value_delimiter = ',')]
    pub alpha: Option<Vec<f64>>,
    #[command(flatten)]
    pub seeds: SeedArgs,
    /// Base RNG seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Use `seed + cell index` for each cell instead of one shared seed.
    #[arg(long)]
    pub seed_per_cell: bool,
    /// Directory for per-cell graphs, reports and the summary table.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Run cells concurrently instead of one after another.
    #[arg(long)]
    pub concurrent: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Model {
    /// Barabási–Albert preferential attachment.
    Ba,
    /// Erdős–Rényi G(n, p).
    Er,
}

#[derive(Args, Debug, Clone)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub model: Model,
    #[arg(long)]
    pub nodes: usize,
    /// Edges per new vertex (ba).
    #[arg(long, default_value_t = 3)]
    pub m: usize,
    /// Edge probability (er).
    #[arg(long, default_value_t = 0.01)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum)]
    pub out_format: Option<FileFormat>,
}

/// A scalar or a list, so one config file serves both `run` and `sweep`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    fn into_vec(self) -> Vec<T> {
        match self {
            OneOrMany::One(v) => vec![v],
            OneOrMany::Many(v) => v,
        }
    }

    fn single(self, name: &str) -> Result<T> {
        match self {
            OneOrMany::One(v) => Ok(v),
            OneOrMany::Many(v) if v.len() == 1 => Ok(v[0].clone()),
            OneOrMany::Many(_) => Err(Error::validation(format!(
                "config key {name} must be a single value for `run`"
            ))),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    input: Option<PathBuf>,
    src: Option<PathBuf>,
    dst: Option<PathBuf>,
    format: Option<FileFormat>,
    num_nodes: Option<usize>,
    method: Option<String>,
    removal_ratio: Option<OneOrMany<f64>>,
    bernoulli: Option<bool>,
    k: Option<OneOrMany<u32>>,
    rho: Option<OneOrMany<f64>>,
    target_node_fraction: Option<OneOrMany<f64>>,
    alpha: Option<OneOrMany<f64>>,
    seeds: Option<PathBuf>,
    random_seeds: Option<usize>,
    max_hops: Option<u32>,
    seed: Option<u64>,
    seed_per_cell: Option<bool>,
    out: Option<PathBuf>,
    out_dir: Option<PathBuf>,
    out_format: Option<FileFormat>,
    report: Option<PathBuf>,
    threads: Option<usize>,
    concurrent: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        toml::from_str(&text).map_err(|e| {
            let line = e
                .span()
                .map(|s| text[..s.start].matches('\n').count() + 1)
                .unwrap_or(0);
            Error::Parse {
                path: path.to_path_buf(),
                line,
                message: e.message().to_string(),
            }
        })
    }

    fn method(&self) -> Result<Option<Method>> {
        self.method.as_deref().map(str::parse).transpose()
    }

    /// Relative paths in the config file resolve against its directory.
    fn rebase(&mut self, base: &Path) {
        for p in [
            &mut self.input,
            &mut self.src,
            &mut self.dst,
            &mut self.seeds,
            &mut self.out,
            &mut self.out_dir,
            &mut self.report,
        ]
        .into_iter()
        .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
    }
}

fn load_config(path: Option<&Path>) -> Result<FileConfig> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => {
            let mut cfg = FileConfig::load(p)?;
            cfg.rebase(p.parent().unwrap_or(Path::new(".")));
            Ok(cfg)
        }
    }
}

fn merge_input(cli: &mut InputArgs, file: &mut FileConfig) {
    // The file supplies an input only when the command line named none.
    if cli.input.is_none() && cli.src.is_none() {
        cli.input = file.input.take();
        cli.src = file.src.take();
        cli.dst = file.dst.take();
    }
    cli.format = cli.format.or(file.format);
    cli.num_nodes = cli.num_nodes.or(file.num_nodes);
}

fn merge_seeds(cli: &mut SeedArgs, file: &mut FileConfig) {
    if cli.seeds.is_none() && cli.random_seeds.is_none() {
        cli.seeds = file.seeds.take();
        cli.random_seeds = file.random_seeds;
    }
    cli.max_hops = cli.max_hops.or(file.max_hops);
}

fn merge_output(cli: &mut OutputArgs, file: &FileConfig) {
    cli.out_format = cli.out_format.or(file.out_format);
    cli.threads = cli.threads.or(file.threads);
}

impl RunArgs {
    /// Fills unset flags from `--config`.
    pub fn resolve(mut self) -> Result<Self> {
        let mut file = load_config(self.output.config.as_deref())?;
        merge_input(&mut self.input, &mut file);
        merge_seeds(&mut self.seeds, &mut file);
        merge_output(&mut self.output, &file);
        if self.method.is_none() {
            self.method = file.method()?;
        }
        macro_rules! scalar {
            ($field:ident) => {
                if self.$field.is_none() {
                    self.$field = file.$field.take().map(|v| v.single(stringify!($field))).transpose()?;
                }
            };
        }
        scalar!(removal_ratio);
        scalar!(k);
        scalar!(rho);
        scalar!(target_node_fraction);
        scalar!(alpha);
        self.bernoulli |= file.bernoulli.unwrap_or(false);
        self.seed = self.seed.or(file.seed);
        self.out = self.out.or(file.out);
        self.report = self.report.or(file.report);
        Ok(self)
    }
}

impl SweepArgs {
    pub fn resolve(mut self) -> Result<Self> {
        let mut file = load_config(self.output.config.as_deref())?;
        merge_input(&mut self.input, &mut file);
        merge_seeds(&mut self.seeds, &mut file);
        merge_output(&mut self.output, &file);
        if self.method.is_none() {
            self.method = file.method()?;
        }
        macro_rules! list {
            ($field:ident) => {
                if self.$field.is_none() {
                    self.$field = file.$field.take().map(OneOrMany::into_vec);
                }
            };
        }
        list!(removal_ratio);
        list!(k);
        list!(rho);
        list!(target_node_fraction);
        list!(alpha);
        self.bernoulli |= file.bernoulli.unwrap_or(false);
        self.seed_per_cell |= file.seed_per_cell.unwrap_or(false);
        self.concurrent |= file.concurrent.unwrap_or(false);
        self.seed = self.seed.or(file.seed);
        self.out_dir = self.out_dir.or(file.out_dir);
        Ok(self)
    }
}

impl InputArgs {
    pub fn spec(&self) -> Result<InputSpec> {
        let location = match (&self.input, &self.src, &self.dst) {
            (Some(path), None, None) => match self.format {
                None => GraphLocation::infer(path),
                Some(FileFormat::Csv) => GraphLocation::CsvEdgeList { path: path.clone() },
                Some(FileFormat::Native) => GraphLocation::NativeEdgeList { path: path.clone() },
                Some(FileFormat::Npy) => {
                    return Err(Error::validation("npy input needs --src and --dst"))
                }
            },
            (None, Some(src), Some(dst)) => {
                if matches!(self.format, Some(f) if f != FileFormat::Npy) {
                    return Err(Error::validation("--src/--dst name npy arrays"));
                }
                GraphLocation::PairedBinaryArrays {
                    src: src.clone(),
                    dst: dst.clone(),
                }
            }
            (None, None, None) => return Err(Error::validation("no input: give --input or --src/--dst")),
            _ => return Err(Error::validation("give either --input or both --src and --dst")),
        };
        let spec = InputSpec::new(location);
        Ok(match self.num_nodes {
            Some(n) => spec.with_num_nodes(n),
            None => spec,
        })
    }
}

/// Output location for `path`. For npy, `path` is a prefix: arrays go to
/// `<prefix>.src.npy` and `<prefix>.dst.npy`.
pub fn output_location(path: &Path, format: Option<FileFormat>) -> GraphLocation {
    let format = format.unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
        Some("csv" | "tsv" | "txt") => FileFormat::Csv,
        Some("npy") => FileFormat::Npy,
        _ => FileFormat::Native,
    });
    match format {
        FileFormat::Csv => GraphLocation::CsvEdgeList { path: path.to_path_buf() },
        FileFormat::Native => GraphLocation::NativeEdgeList { path: path.to_path_buf() },
        FileFormat::Npy => {
            let prefix = if path.extension().is_some_and(|e| e == "npy") {
                path.with_extension("")
            } else {
                path.to_path_buf()
            };
            let with = |suffix: &str| {
                let mut s = prefix.clone().into_os_string();
                s.push(suffix);
                PathBuf::from(s)
            };
            GraphLocation::PairedBinaryArrays {
                src: with(".src.npy"),
                dst: with(".dst.npy"),
            }
        }
    }
}

pub fn extension(format: Option<FileFormat>) -> &'static str {
    match format {
        Some(FileFormat::Csv) => "csv",
        Some(FileFormat::Npy) => "npy",
        Some(FileFormat::Native) | None => "bin",
    }
}
