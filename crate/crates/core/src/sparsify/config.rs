use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::SeedNodeSet;

/// Registry of available sparsifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Random,
    KNeighbor,
    RankDegree,
    LocalDegree,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Random,
        Method::KNeighbor,
        Method::RankDegree,
        Method::LocalDegree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Random => "random",
            Method::KNeighbor => "k-neighbor",
            Method::RankDegree => "rank-degree",
            Method::LocalDegree => "local-degree",
        }
    }

    /// Whether the method works on neighbour lists rather than the raw edge list.
    pub fn needs_adjacency(self) -> bool {
        !matches!(self, Method::Random)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s || m.name().replace('-', "_") == s)
            .ok_or_else(|| {
                Error::validation(format!(
                    "unknown method `{s}`; expected one of random, k-neighbor, rank-degree, local-degree"
                ))
            })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RandomSampling {
    /// Exactly `round((1 - r) * |E|)` edges, uniformly without replacement.
    #[default]
    ExactCount,
    /// Each edge kept independently with probability `1 - r`.
    Bernoulli,
}

/// Initial Rank Degree frontier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeedSource {
    Nodes(SeedNodeSet),
    /// `count` nodes drawn uniformly from the graph.
    Random { count: usize },
}

impl SeedSource {
    pub fn len(&self) -> usize {
        match self {
            SeedSource::Nodes(s) => s.len(),
            SeedSource::Random { count } => *count,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Method plus its parameters. Only the selected method's fields exist.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum MethodConfig {
    Random {
        removal_ratio: f64,
        #[serde(default)]
        sampling: RandomSampling,
    },
    KNeighbor {
        k: u32,
    },
    RankDegree {
        rho: f64,
        target_node_fraction: f64,
        seeds: SeedSource,
        /// Defaults to `10 * ceil(log2(n) + 1)`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_hops: Option<u32>,
    },
    LocalDegree {
        alpha: f64,
    },
}

impl MethodConfig {
    pub fn method(&self) -> Method {
        match self {
            MethodConfig::Random { .. } => Method::Random,
            MethodConfig::KNeighbor { .. } => Method::KNeighbor,
            MethodConfig::RankDegree { .. } => Method::RankDegree,
            MethodConfig::LocalDegree { .. } => Method::LocalDegree,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparsifierConfig {
    #[serde(flatten)]
    pub method: MethodConfig,
    pub seed: u64,
}

pub const DEFAULT_REMOVAL_RATIO: f64 = 0.30;
pub const DEFAULT_K: u32 = 5;
pub const DEFAULT_RHO: f64 = 0.50;
pub const DEFAULT_TARGET_NODE_FRACTION: f64 = 0.25;
pub const DEFAULT_ALPHA: f64 = 0.5;

pub fn default_max_hops(num_nodes: usize) -> u32 {
    let log = (num_nodes.max(1) as f64).log2();
    10 * (log + 1.0).ceil() as u32
}

/// Loosely typed parameters as they arrive from a command line or binding.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Params {
    pub removal_ratio: Option<f64>,
    pub bernoulli: bool,
    pub k: Option<u32>,
    pub rho: Option<f64>,
    pub target_node_fraction: Option<f64>,
    pub seeds: Option<SeedNodeSet>,
    pub random_seeds: Option<usize>,
    pub max_hops: Option<u32>,
    pub alpha: Option<f64>,
}

impl Params {
    fn supplied(&self) -> Vec<(&'static str, Method)> {
        let mut out = Vec::new();
        let mut note = |set: bool, name, m| {
            if set {
                out.push((name, m))
            }
        };
        note(self.removal_ratio.is_some(), "removal_ratio", Method::Random);
        note(self.bernoulli, "bernoulli", Method::Random);
        note(self.k.is_some(), "k", Method::KNeighbor);
        note(self.rho.is_some(), "rho", Method::RankDegree);
        note(self.target_node_fraction.is_some(), "target_node_fraction", Method::RankDegree);
        note(self.seeds.is_some(), "seeds", Method::RankDegree);
        note(self.random_seeds.is_some(), "random_seeds", Method::RankDegree);
        note(self.max_hops.is_some(), "max_hops", Method::RankDegree);
        note(self.alpha.is_some(), "alpha", Method::LocalDegree);
        out
    }
}

fn check_fraction(name: &str, v: f64, lo_open: bool, hi_open: bool) -> Result<()> {
    let lo_ok = if lo_open { v > 0.0 } else { v >= 0.0 };
    let hi_ok = if hi_open { v < 1.0 } else { v <= 1.0 };
    if v.is_finite() && lo_ok && hi_ok {
        Ok(())
    } else {
        Err(Error::validation(format!(
            "{name} must lie in {}0, 1{}, got {v}",
            if lo_open { "(" } else { "[" },
            if hi_open { ")" } else { "]" },
        )))
    }
}

impl SparsifierConfig {
    pub fn new(method: MethodConfig, seed: u64) -> Self {
        SparsifierConfig { method, seed }
    }

    /// Defaults for every method. Rank Degree has no default seed set and
    /// therefore needs explicit seeds or a random seed count.
    pub fn from_params(method: Method, params: Params, seed: u64) -> Result<Self> {
        if let Some((name, owner)) = params.supplied().into_iter().find(|&(_, m)| m != method) {
            return Err(Error::validation(format!(
                "parameter {name} belongs to {owner}, not {method}"
            )));
        }
        let cfg = match method {
            Method::Random => MethodConfig::Random {
                removal_ratio: params.removal_ratio.unwrap_or(DEFAULT_REMOVAL_RATIO),
                sampling: if params.bernoulli {
                    RandomSampling::Bernoulli
                } else {
                    RandomSampling::ExactCount
                },
            },
            Method::KNeighbor => MethodConfig::KNeighbor {
                k: params.k.unwrap_or(DEFAULT_K),
            },
            Method::RankDegree => {
                let seeds = match (params.seeds, params.random_seeds) {
                    (Some(_), Some(_)) => {
                        return Err(Error::validation(
                            "give either a seed node set or a random seed count, not both",
                        ))
                    }
                    (Some(s), None) => SeedSource::Nodes(s),
                    (None, Some(count)) => SeedSource::Random { count },
                    (None, None) => {
                        return Err(Error::validation(
                            "rank-degree needs seed nodes or a random seed count",
                        ))
                    }
                };
                MethodConfig::RankDegree {
                    rho: params.rho.unwrap_or(DEFAULT_RHO),
                    target_node_fraction: params
                        .target_node_fraction
                        .unwrap_or(DEFAULT_TARGET_NODE_FRACTION),
                    seeds,
                    max_hops: params.max_hops,
                }
            }
            Method::LocalDegree => MethodConfig::LocalDegree {
                alpha: params.alpha.unwrap_or(DEFAULT_ALPHA),
            },
        };
        let cfg = SparsifierConfig::new(cfg, seed);
        cfg.validate()?;
        Ok(cfg)
    }

    /// Parameter checks that do not depend on the graph.
    pub fn validate(&self) -> Result<()> {
        match &self.method {
            MethodConfig::Random { removal_ratio, .. } => {
                check_fraction("removal_ratio", *removal_ratio, false, true)
            }
            MethodConfig::KNeighbor { k } => {
                if *k == 0 {
                    Err(Error::validation("k must be at least 1"))
                } else {
                    Ok(())
                }
            }
            MethodConfig::RankDegree {
                rho,
                target_node_fraction,
                seeds,
                max_hops,
            } => {
                check_fraction("rho", *rho, true, false)?;
                check_fraction("target_node_fraction", *target_node_fraction, true, false)?;
                if seeds.is_empty() {
                    return Err(Error::validation(
                        "rank-degree seed set is empty and no random seeds were requested",
                    ));
                }
                if *max_hops == Some(0) {
                    return Err(Error::validation("max_hops must be at least 1"));
                }
                Ok(())
            }
            MethodConfig::LocalDegree { alpha } => check_fraction("alpha", *alpha, false, false),
        }
    }

    /// Checks that also need the graph size.
    pub fn validate_for(&self, num_nodes: usize) -> Result<()> {
        self.validate()?;
        if let MethodConfig::RankDegree {
            target_node_fraction,
            seeds,
            ..
        } = &self.method
        {
            match seeds {
                SeedSource::Nodes(s) => s.check(num_nodes)?,
                SeedSource::Random { count } if *count > num_nodes => {
                    return Err(Error::validation(format!(
                        "cannot draw {count} random seeds from {num_nodes} nodes"
                    )))
                }
                SeedSource::Random { .. } => {}
            }
            if target_size(*target_node_fraction, num_nodes) == 0 {
                return Err(Error::validation("target vertex count is zero"));
            }
        }
        Ok(())
    }
}

/// `ceil(fraction * n)`, the Rank Degree target vertex count.
pub fn target_size(fraction: f64, num_nodes: usize) -> usize {
    ((fraction * num_nodes as f64).ceil() as usize).min(num_nodes)
}
