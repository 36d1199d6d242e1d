//! Phase timing and run statistics.
//!
//! A run is timed as a sequence of non-overlapping phases. Whatever wall time
//! the measured phases do not account for is reported as `other`, so the
//! phases always sum to the total. Durations are kept at millisecond
//! resolution and serialised as seconds with three decimals.

use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::LoadStats;
use crate::sparsify::{RankDegreeTrace, SparsificationResult, SparsifierConfig};

pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    /// File to raw id arrays.
    DatasetLoad,
    /// Raw arrays to a canonical [`Graph`].
    ToInternal,
    EdgeToAdjacency,
    Sparsification,
    /// Output graph to file or arrays.
    Export,
    /// Residual wall time not covered by the phases above.
    Other,
}

impl Phase {
    pub const ALL: [Phase; 6] = [
        Phase::DatasetLoad,
        Phase::ToInternal,
        Phase::EdgeToAdjacency,
        Phase::Sparsification,
        Phase::Export,
        Phase::Other,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Phase::DatasetLoad => "dataset_load",
            Phase::ToInternal => "to_internal",
            Phase::EdgeToAdjacency => "edge_to_adjacency",
            Phase::Sparsification => "sparsification",
            Phase::Export => "export",
            Phase::Other => "other",
        }
    }

    fn slot(self) -> usize {
        Phase::ALL.iter().position(|&p| p == self).unwrap()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseTiming {
    pub name: Phase,
    #[serde(rename = "seconds", with = "millis_as_seconds")]
    pub millis: u64,
}

/// Durations of all six phases, in canonical order, plus the end-to-end total.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TimingBreakdown {
    pub phases: Vec<PhaseTiming>,
    #[serde(rename = "total_seconds", with = "millis_as_seconds")]
    pub total_millis: u64,
}

impl TimingBreakdown {
    pub fn millis(&self, phase: Phase) -> u64 {
        self.phases
            .iter()
            .filter(|p| p.name == phase)
            .map(|p| p.millis)
            .sum()
    }

    pub fn seconds(&self, phase: Phase) -> f64 {
        self.millis(phase) as f64 / 1000.0
    }

    pub fn total_seconds(&self) -> f64 {
        self.total_millis as f64 / 1000.0
    }

    fn from_parts(measured: [Duration; 6], total: Duration) -> Self {
        let mut millis: Vec<u64> = measured.iter().map(|d| d.as_millis() as u64).collect();
        let other = Phase::Other.slot();
        millis[other] = 0;
        let measured_sum: u64 = millis.iter().sum();
        let total_millis = (total.as_millis() as u64).max(measured_sum);
        millis[other] = total_millis - measured_sum;
        TimingBreakdown {
            phases: Phase::ALL
                .iter()
                .zip(millis)
                .map(|(&name, millis)| PhaseTiming { name, millis })
                .collect(),
            total_millis,
        }
    }
}

/// Wall-clock phase timer for one run.
#[derive(Debug)]
pub struct PhaseClock {
    started: Instant,
    open: Option<(Phase, Instant)>,
    measured: [Duration; 6],
}

impl Default for PhaseClock {
    fn default() -> Self {
        Self::start()
    }
}

impl PhaseClock {
    pub fn start() -> Self {
        PhaseClock {
            started: Instant::now(),
            open: None,
            measured: [Duration::ZERO; 6],
        }
    }

    /// Opens `phase`. Opening a phase while another one is open is a bug;
    /// debug builds panic, release builds close the previous phase first.
    pub fn begin(&mut self, phase: Phase) {
        debug_assert!(
            self.open.is_none(),
            "phase {} opened while {} is still running",
            phase.name(),
            self.open.map(|(p, _)| p.name()).unwrap_or_default()
        );
        if self.open.is_some() {
            self.end();
        }
        self.open = Some((phase, Instant::now()));
    }

    pub fn end(&mut self) {
        if let Some((phase, at)) = self.open.take() {
            self.measured[phase.slot()] += at.elapsed();
        }
    }

    pub fn time<T>(&mut self, phase: Phase, f: impl FnOnce() -> T) -> T {
        self.begin(phase);
        let out = f();
        self.end();
        out
    }

    /// Adds an externally measured duration, e.g. from a nested component.
    pub fn record(&mut self, phase: Phase, elapsed: Duration) {
        debug_assert!(self.open.is_none(), "record while a phase is open");
        if phase != Phase::Other {
            self.measured[phase.slot()] += elapsed;
        }
    }

    /// Folds the measured phases of a nested breakdown into this clock.
    pub fn absorb(&mut self, nested: &TimingBreakdown) {
        for p in &nested.phases {
            self.record(p.name, Duration::from_millis(p.millis));
        }
    }

    pub fn finish(mut self) -> TimingBreakdown {
        self.end();
        TimingBreakdown::from_parts(self.measured, self.started.elapsed())
    }
}

mod millis_as_seconds {
    use super::*;

    pub fn serialize<S: Serializer>(millis: &u64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(*millis as f64 / 1000.0)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
        let secs = f64::deserialize(d)?;
        if secs.is_nan() || secs < 0.0 {
            return Err(serde::de::Error::custom("duration must be non-negative"));
        }
        Ok((secs * 1000.0).round() as u64)
    }
}

/// Rounds a percentage to one decimal.
pub fn round1(x: f64) -> f64 {
    (x * 10.0).round() / 10.0
}

/// `100 * (1 - output / input)`, or 0 for an empty input.
pub fn edge_reduction_pct(input_edges: usize, output_edges: usize) -> f64 {
    if input_edges == 0 {
        0.0
    } else {
        100.0 * (1.0 - output_edges as f64 / input_edges as f64)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeSummary {
    pub min: u32,
    pub median: f64,
    pub mean: f64,
    pub max: u32,
}

impl DegreeSummary {
    pub fn of(g: &Graph) -> Self {
        let mut deg = g.degrees();
        if deg.is_empty() {
            return DegreeSummary {
                min: 0,
                median: 0.0,
                mean: 0.0,
                max: 0,
            };
        }
        deg.sort_unstable();
        let n = deg.len();
        let median = if n % 2 == 1 {
            deg[n / 2] as f64
        } else {
            (deg[n / 2 - 1] as f64 + deg[n / 2] as f64) / 2.0
        };
        DegreeSummary {
            min: deg[0],
            median,
            mean: 2.0 * g.num_edges() as f64 / n as f64,
            max: deg[n - 1],
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputStats {
    pub nodes: usize,
    pub edges: usize,
    pub raw_edges: usize,
    pub self_loops_dropped: usize,
    pub duplicates_collapsed: usize,
}

impl InputStats {
    pub fn of(g: &Graph) -> Self {
        InputStats {
            nodes: g.num_nodes(),
            edges: g.num_edges(),
            raw_edges: g.num_edges(),
            ..Default::default()
        }
    }

    pub fn loaded(g: &Graph, load: &LoadStats) -> Self {
        InputStats {
            nodes: g.num_nodes(),
            edges: g.num_edges(),
            raw_edges: load.raw_edges,
            self_loops_dropped: load.self_loops,
            duplicates_collapsed: load.duplicates,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputStats {
    pub edges: usize,
    /// Rounded to one decimal.
    pub edge_reduction_pct: f64,
    pub node_coverage: usize,
    pub degree: DegreeSummary,
}

pub fn compute_stats(input: &Graph, output: &Graph) -> OutputStats {
    OutputStats {
        edges: output.num_edges(),
        edge_reduction_pct: round1(edge_reduction_pct(input.num_edges(), output.num_edges())),
        node_coverage: output.covered_nodes(),
        degree: DegreeSummary::of(output),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub toolkit_version: String,
    pub seed: u64,
    pub threads: usize,
    pub config: SparsifierConfig,
    pub input: InputStats,
    pub output: OutputStats,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_degree: Option<RankDegreeTrace>,
    pub timing: TimingBreakdown,
}

impl RunReport {
    /// Assembles the report for one run. `timing` is the end-to-end
    /// breakdown, which normally has absorbed `result.timing`.
    pub fn from_run(
        input: &Graph,
        input_stats: InputStats,
        result: &SparsificationResult,
        timing: TimingBreakdown,
        threads: usize,
    ) -> Self {
        RunReport {
            toolkit_version: TOOLKIT_VERSION.into(),
            seed: result.config.seed,
            threads,
            config: result.config.clone(),
            input: input_stats,
            output: compute_stats(input, &result.graph),
            rank_degree: result.rank_degree.clone(),
            timing,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

pub fn emit_report(report: &RunReport, path: &Path) -> Result<()> {
    fs::write(path, report.to_json()).map_err(|e| Error::io(path, e))
}

pub fn read_report(path: &Path) -> Result<RunReport> {
    let s = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    RunReport::from_json(&s)
}
