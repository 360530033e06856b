use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formulas::s1_threshold;
use crate::gnp::NaturalDistribution;

pub const SCHEMA: &str = "v1";

fn schema_v1() -> String {
    SCHEMA.to_string()
}

fn default_sigma() -> f64 {
    3.0
}

fn default_t_grid() -> Vec<f64> {
    vec![1.0, 2.0, 4.0, 8.0, 16.0]
}

fn default_restarts() -> usize {
    100
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    /// Frequency of "no block `{jk..jk+k-1}` is a clique".
    ElementaryMiss,
    /// Mean of `K_k(G)`.
    CliqueCensusMean,
    /// Upper-tail frequencies of `K_k(G)` against the dependent-indicator
    /// tail bound.
    TailFrequency,
    /// Cost and answers of a chosen decider.
    SolverCost,
    /// Normalized mean cost `E[cost]/n^c` across the grid.
    AvgFptDiagnostic,
    /// Threshold exceedances of the large-clique tail sum and the clique
    /// count.
    TypFptDiagnostic,
    /// Greedy and repeated-greedy clique sizes against the maximum.
    GreedyGap,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverKind {
    #[default]
    Auto,
    #[serde(rename = "A", alias = "a")]
    A,
    #[serde(rename = "B", alias = "b")]
    B,
    Brute,
    Greedy,
}

/// Cost threshold `f_k · n^c`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CostThreshold {
    pub f_k: f64,
    pub c: f64,
}

impl CostThreshold {
    pub fn at(&self, n: usize) -> f64 {
        self.f_k * (n as f64).powf(self.c)
    }
}

/// Declarative Monte-Carlo experiment, loaded from JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "schema_v1")]
    pub schema: String,
    pub kind: ExperimentKind,
    pub distribution: NaturalDistribution,
    pub n_grid: Vec<usize>,
    /// Clique size `k` (or `s` for census and tail experiments).
    pub k: usize,
    pub trials: u64,
    pub seed: u64,
    #[serde(default)]
    pub solver: SolverKind,
    /// Run maximal-clique enumeration to completion instead of stopping at
    /// the first large clique.
    #[serde(default)]
    pub full_enumeration: bool,
    /// Normalization exponent for `E[cost]/n^c`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<u32>,
    #[serde(default = "default_t_grid")]
    pub t_grid: Vec<f64>,
    #[serde(default = "default_sigma")]
    pub sigma: f64,
    /// Restarts for the repeated greedy (also used by `solver = greedy`).
    #[serde(default = "default_restarts")]
    pub greedy_restarts: usize,
    /// Overrides the `s1` derived from the distribution's limit.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s1: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cost_threshold: Option<CostThreshold>,
}

impl ExperimentConfig {
    /// Config with defaults for every optional field.
    pub fn new(kind: ExperimentKind, distribution: NaturalDistribution, n_grid: Vec<usize>, k: usize, trials: u64, seed: u64) -> Self {
        ExperimentConfig {
            schema: schema_v1(),
            kind,
            distribution,
            n_grid,
            k,
            trials,
            seed,
            solver: SolverKind::default(),
            full_enumeration: false,
            c: None,
            t_grid: default_t_grid(),
            sigma: default_sigma(),
            greedy_restarts: default_restarts(),
            s1: None,
            cost_threshold: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.schema != SCHEMA {
            return bad(format!("unsupported schema '{}'", self.schema));
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.n_grid.is_empty() {
            return bad("n_grid must not be empty".into());
        }
        if self.n_grid.windows(2).any(|w| w[0] >= w[1]) {
            return bad("n_grid must be strictly increasing".into());
        }
        if !(self.sigma > 0.0) {
            return bad("sigma must be positive".into());
        }
        if self.greedy_restarts == 0 {
            return bad("greedy_restarts must be at least 1".into());
        }
        self.distribution
            .validate()
            .map_err(|e| Error::Config(e.to_string()))?;
        let n_min = self.n_grid[0];
        match self.kind {
            ExperimentKind::ElementaryMiss
            | ExperimentKind::CliqueCensusMean
            | ExperimentKind::TailFrequency => {
                if self.k < 2 || self.k > n_min {
                    return bad(format!("need 2 <= k <= n for every grid point, got k = {}", self.k));
                }
            }
            ExperimentKind::AvgFptDiagnostic => {
                if self.c.is_none() {
                    return bad("avg_fpt_diagnostic needs the normalization exponent c".into());
                }
            }
            ExperimentKind::TypFptDiagnostic => {
                if self.s1.is_none() && self.distribution.c_g().is_none_or(|c| c <= 0.0) {
                    return bad("typ_fpt_diagnostic needs a sparse distribution (c_g > 0) or an explicit s1".into());
                }
                if self.s1.is_some_and(|s| s < 2) {
                    return bad("s1 must be at least 2".into());
                }
            }
            ExperimentKind::GreedyGap => {
                if !self.distribution.is_dense() {
                    return bad("greedy_gap needs a dense distribution (c_g = 0)".into());
                }
            }
            ExperimentKind::SolverCost => {}
        }
        if self.kind == ExperimentKind::TailFrequency && self.t_grid.iter().any(|t| !(*t >= 0.0)) {
            return bad("t_grid values must be non-negative".into());
        }
        if n_min < 2
            && matches!(
                self.kind,
                ExperimentKind::ElementaryMiss | ExperimentKind::CliqueCensusMean | ExperimentKind::TailFrequency
            )
        {
            return bad("grid points must be at least 2".into());
        }
        Ok(())
    }

    /// Large-clique threshold for the typical-time diagnostic.
    pub fn effective_s1(&self) -> Option<usize> {
        self.s1
            .or_else(|| self.distribution.c_g().and_then(|c| s1_threshold(c).ok()))
    }
}
