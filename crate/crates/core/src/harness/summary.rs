//! Aggregation of trial records into per-grid-point statistics, plus the
//! average-time and typical-time diagnostics.
//!
//! Everything here is a pure function of `(config, records)`, so a summary
//! can always be recomputed from a CSV file.

use std::collections::BTreeMap;

use serde::Serialize;

use super::config::{ExperimentConfig, ExperimentKind, SCHEMA};
use super::record::TrialRecord;
use crate::error::Result;
use crate::formulas::{
    dependency_degree_bound, expected_clique_count, jr_tail_bound, lemma1_bound,
    prob_no_elementary_clique_exact,
};
use crate::gnp::GENERATOR_ID;

/// Sample mean and standard error of the mean.
pub fn mean_and_se(values: &[f64]) -> (f64, f64) {
    let t = values.len();
    if t == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / t as f64;
    if t == 1 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (t - 1) as f64;
    (mean, (var / t as f64).sqrt())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailPoint {
    pub t: f64,
    pub threshold: f64,
    /// Fraction of trials with `K_s ≥ μ_s + t`.
    pub frequency: f64,
    pub se: f64,
    pub bound: f64,
    /// `frequency ≤ bound + σ·se`.
    pub sound: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct PointSummary {
    pub n: usize,
    pub trials: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_cost: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub se_cost: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalized_mean_cost: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub yes_fraction: Option<f64>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub path_counts: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma1_hypothesis_fraction: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_maximal_cliques: Option<f64>,

    #[serde(skip_serializing_if = "Option::is_none")]
    pub miss_frequency: Option<f64>,
    /// Binomial standard error at the exact miss probability.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub miss_se: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub miss_exact: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub miss_bound_ln: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub miss_bound_hypothesis: Option<bool>,

    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_clique_count: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub se_clique_count: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_s: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tails: Vec<TailPoint>,

    /// Agreement of the measured statistic with its exact reference value
    /// within `σ` standard errors.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub within_sigma: Option<bool>,

    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_greedy_size: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_repeated_greedy_size: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_max_clique_size: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_greedy_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_repeated_greedy_ratio: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AvgFptVerdict {
    /// Normalized means do not increase anywhere on the grid.
    ConsistentOnGrid,
    /// Some normalized mean increases along the grid.
    IncreasingOnGrid,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AvgFptPoint {
    pub n: usize,
    pub mean_cost: f64,
    /// `E[cost] / n^c`.
    pub normalized_mean: f64,
    /// Running sum of `normalized_mean` over the grid so far.
    pub partial_sum: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AvgFptDiagnostic {
    pub c: u32,
    pub points: Vec<AvgFptPoint>,
    pub non_increasing: bool,
    pub verdict: AvgFptVerdict,
}

/// Per-`n` normalized mean cost for exponent `c`. The verdict describes the
/// trend over the finite grid and is not a proof of bounded sums.
pub fn avgfpt_diagnostic(records: &[TrialRecord], c: u32, n_grid: &[usize]) -> AvgFptDiagnostic {
    let mut points = Vec::with_capacity(n_grid.len());
    let mut partial_sum = 0.0;
    for &n in n_grid {
        let costs: Vec<f64> = records
            .iter()
            .filter(|r| r.n == n)
            .filter_map(|r| r.cost.map(|c| c as f64))
            .collect();
        let (mean_cost, _) = mean_and_se(&costs);
        let normalized_mean = mean_cost / (n as f64).powi(c as i32);
        partial_sum += normalized_mean;
        points.push(AvgFptPoint {
            n,
            mean_cost,
            normalized_mean,
            partial_sum,
        });
    }
    let non_increasing = points
        .windows(2)
        .all(|w| w[1].normalized_mean <= w[0].normalized_mean);
    AvgFptDiagnostic {
        c,
        points,
        non_increasing,
        verdict: if non_increasing {
            AvgFptVerdict::ConsistentOnGrid
        } else {
            AvgFptVerdict::IncreasingOnGrid
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TypMetric {
    Cost,
    /// Cliques with at least `s1` vertices.
    TailSum,
    /// All cliques with at least two vertices.
    CliqueTotal,
}

impl TypMetric {
    fn value(&self, r: &TrialRecord) -> Option<f64> {
        match self {
            TypMetric::Cost => r.cost.map(|v| v as f64),
            TypMetric::TailSum => r.tail_sum.map(|v| v as f64),
            TypMetric::CliqueTotal => r.clique_total.map(|v| v as f64),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Exceedance {
    pub n: usize,
    pub trials: u64,
    pub threshold: f64,
    pub exceedances: u64,
    pub fraction: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TypFptDiagnostic {
    pub metric: TypMetric,
    pub points: Vec<Exceedance>,
    pub zero_exceedance: bool,
}

/// Fraction of trials per `n` whose `metric` strictly exceeds
/// `threshold(n)`.
pub fn typfpt_diagnostic(
    records: &[TrialRecord],
    n_grid: &[usize],
    metric: TypMetric,
    threshold: impl Fn(usize) -> f64,
) -> TypFptDiagnostic {
    let points: Vec<Exceedance> = n_grid
        .iter()
        .map(|&n| {
            let limit = threshold(n);
            let values: Vec<f64> = records
                .iter()
                .filter(|r| r.n == n)
                .filter_map(|r| metric.value(r))
                .collect();
            let exceedances = values.iter().filter(|&&v| v > limit).count() as u64;
            Exceedance {
                n,
                trials: values.len() as u64,
                threshold: limit,
                exceedances,
                fraction: exceedances as f64 / values.len().max(1) as f64,
            }
        })
        .collect();
    let zero_exceedance = points.iter().all(|p| p.exceedances == 0);
    TypFptDiagnostic {
        metric,
        points,
        zero_exceedance,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryReport {
    pub schema: &'static str,
    pub generator: &'static str,
    pub config: ExperimentConfig,
    pub points: Vec<PointSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub avg_fpt: Option<AvgFptDiagnostic>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub typ_fpt: Vec<TypFptDiagnostic>,
}

impl SummaryReport {
    /// Every `within_sigma` and tail `sound` flag is true.
    pub fn all_checks_pass(&self) -> bool {
        self.points.iter().all(|p| {
            p.within_sigma.unwrap_or(true) && p.tails.iter().all(|t| t.sound)
        })
    }
}

fn mean_of<T: Copy + Into<f64>>(records: &[&TrialRecord], f: impl Fn(&TrialRecord) -> Option<T>) -> Option<(f64, f64)> {
    let values: Vec<f64> = records.iter().filter_map(|r| f(r).map(Into::into)).collect();
    (!values.is_empty()).then(|| mean_and_se(&values))
}

fn fraction(records: &[&TrialRecord], f: impl Fn(&TrialRecord) -> Option<bool>) -> Option<f64> {
    let flags: Vec<bool> = records.iter().filter_map(|r| f(r)).collect();
    (!flags.is_empty()).then(|| flags.iter().filter(|&&b| b).count() as f64 / flags.len() as f64)
}

fn u64_f64(v: u64) -> f64 {
    v as f64
}

fn usize_f64(v: usize) -> f64 {
    v as f64
}

fn summarize_point(cfg: &ExperimentConfig, n: usize, rs: &[&TrialRecord]) -> Result<PointSummary> {
    let k = cfg.k;
    let trials = rs.len() as u64;
    let p = (n >= 2).then(|| cfg.distribution.eval_p(n)).transpose()?;
    let mut s = PointSummary {
        n,
        trials,
        p,
        ..Default::default()
    };

    if let Some((m, se)) = mean_of(rs, |r| r.cost.map(u64_f64)) {
        s.mean_cost = Some(m);
        s.se_cost = Some(se);
        if let Some(c) = cfg.c {
            s.normalized_mean_cost = Some(m / (n as f64).powi(c as i32));
        }
    }
    s.yes_fraction = fraction(rs, |r| r.answer);
    s.lemma1_hypothesis_fraction = fraction(rs, |r| r.lemma1_hypothesis);
    s.mean_maximal_cliques = mean_of(rs, |r| r.maximal_cliques.map(u64_f64)).map(|x| x.0);
    for r in rs {
        if let Some(path) = &r.path {
            *s.path_counts.entry(path.clone()).or_default() += 1;
        }
    }

    match cfg.kind {
        ExperimentKind::ElementaryMiss => {
            let p = p.expect("validated n >= 2");
            let exact = prob_no_elementary_clique_exact(n, k, p)?;
            let freq = fraction(rs, |r| r.elementary_hit.map(|h| !h)).unwrap_or(f64::NAN);
            let se = (exact * (1.0 - exact) / trials as f64).sqrt();
            let g = cfg.distribution.g(n)?;
            s.miss_frequency = Some(freq);
            s.miss_exact = Some(exact);
            s.miss_se = Some(se);
            if let Some(g) = g {
                let b = lemma1_bound(n, k, g);
                s.miss_bound_ln = Some(b.ln_value);
                s.miss_bound_hypothesis = Some(b.hypothesis_holds);
            }
            s.within_sigma = Some((freq - exact).abs() <= cfg.sigma * se);
        }
        ExperimentKind::CliqueCensusMean | ExperimentKind::TailFrequency => {
            let p = p.expect("validated n >= 2");
            let mu = expected_clique_count(n, p, k, None)?.mu;
            let counts: Vec<f64> = rs.iter().filter_map(|r| r.clique_count.map(u64_f64)).collect();
            let (mean, se) = mean_and_se(&counts);
            s.mean_clique_count = Some(mean);
            s.se_clique_count = Some(se);
            s.mu_s = Some(mu);
            if cfg.kind == ExperimentKind::CliqueCensusMean {
                s.within_sigma = Some((mean - mu).abs() <= cfg.sigma * se);
            } else {
                let delta = dependency_degree_bound(n, k)?.bound as f64;
                for &t in &cfg.t_grid {
                    let threshold = mu + t;
                    let hits = counts.iter().filter(|&&c| c >= threshold).count();
                    let f = hits as f64 / counts.len() as f64;
                    let se = (f * (1.0 - f) / counts.len() as f64).sqrt();
                    let bound = if mu > 0.0 { jr_tail_bound(mu, t, delta.max(1.0))? } else { 1.0 };
                    s.tails.push(TailPoint {
                        t,
                        threshold,
                        frequency: f,
                        se,
                        bound,
                        sound: f <= bound + cfg.sigma * se,
                    });
                }
            }
        }
        ExperimentKind::GreedyGap => {
            s.mean_greedy_size = mean_of(rs, |r| r.greedy_size.map(usize_f64)).map(|x| x.0);
            s.mean_repeated_greedy_size =
                mean_of(rs, |r| r.repeated_greedy_size.map(usize_f64)).map(|x| x.0);
            s.mean_max_clique_size = mean_of(rs, |r| r.max_clique_size.map(usize_f64)).map(|x| x.0);
            let ratio = |r: &TrialRecord, size: Option<usize>| match (size, r.max_clique_size) {
                (Some(a), Some(m)) if m > 0 => Some(a as f64 / m as f64),
                _ => None,
            };
            s.mean_greedy_ratio = mean_of(rs, |r| ratio(r, r.greedy_size)).map(|x| x.0);
            s.mean_repeated_greedy_ratio =
                mean_of(rs, |r| ratio(r, r.repeated_greedy_size)).map(|x| x.0);
        }
        _ => {}
    }
    Ok(s)
}

/// Recomputes the full report from the records. Records are sorted by
/// `(n, trial)` first, so the result does not depend on their order.
pub fn summarize(cfg: &ExperimentConfig, records: &[TrialRecord]) -> Result<SummaryReport> {
    let mut sorted: Vec<&TrialRecord> = records.iter().collect();
    sorted.sort_by_key(|r| (r.n, r.trial));
    let owned: Vec<TrialRecord> = sorted.iter().map(|r| (*r).clone()).collect();

    let mut points = Vec::with_capacity(cfg.n_grid.len());
    for &n in &cfg.n_grid {
        let rs: Vec<&TrialRecord> = sorted.iter().copied().filter(|r| r.n == n).collect();
        points.push(summarize_point(cfg, n, &rs)?);
    }

    let avg_fpt = match (cfg.kind, cfg.c) {
        (ExperimentKind::AvgFptDiagnostic | ExperimentKind::SolverCost, Some(c)) => {
            Some(avgfpt_diagnostic(&owned, c, &cfg.n_grid))
        }
        _ => None,
    };

    let mut typ_fpt = Vec::new();
    if cfg.kind == ExperimentKind::TypFptDiagnostic {
        typ_fpt.push(typfpt_diagnostic(&owned, &cfg.n_grid, TypMetric::TailSum, |n| {
            (n as f64).ln()
        }));
        if let Some(s1) = cfg.effective_s1() {
            typ_fpt.push(typfpt_diagnostic(&owned, &cfg.n_grid, TypMetric::CliqueTotal, |n| {
                (n as f64).powi(s1 as i32) + (n as f64).ln()
            }));
        }
    }
    if let Some(th) = cfg.cost_threshold {
        typ_fpt.push(typfpt_diagnostic(&owned, &cfg.n_grid, TypMetric::Cost, |n| th.at(n)));
    }

    Ok(SummaryReport {
        schema: SCHEMA,
        generator: GENERATOR_ID,
        config: cfg.clone(),
        points,
        avg_fpt,
        typ_fpt,
    })
}
