//! Seed-reproducible Monte-Carlo experiments.
//!
//! Trial `i` at grid position `j` draws its graph from generator stream
//! `j · trials + i`, and any randomized solver continues on the same stream,
//! so every record is a pure function of the config. Trials run in parallel
//! on the current rayon pool; records come back in `(n, trial)` order
//! regardless of scheduling.

pub mod config;
pub mod record;
pub mod summary;
pub mod tail;

use std::fs;
use std::io::BufWriter;
use std::path::Path;

use rayon::prelude::*;

pub use config::{CostThreshold, ExperimentConfig, ExperimentKind, SolverKind};
pub use record::{read_trials_csv, write_trials_csv, TrialRecord, CSV_COLUMNS};
pub use summary::{
    avgfpt_diagnostic, summarize, typfpt_diagnostic, AvgFptDiagnostic, AvgFptVerdict, SummaryReport,
    TypFptDiagnostic, TypMetric,
};
pub use tail::clique_size_tail_sum;

use crate::error::{Error, Result};
use crate::formulas::lemma1_hypothesis;
use crate::gnp::{sample_gnp_with, RngSeed};
use crate::graph::{count_cliques_by_size, count_cliques_of_size, max_clique_size_bruteforce, Graph};
use crate::solvers::{
    adaptive_decide, algorithm_a, algorithm_b_with, brute_force_decide, elementary_clique_scan,
    greedy_clique, greedy_decide_with, repeated_greedy_with, DecisionResult, SolverPath,
};

/// Solver answers are cross-checked against brute force up to this order.
pub const ORACLE_MAX_N: usize = 25;

/// Exact maximum clique sizes are computed up to this order.
pub const GREEDY_EXACT_MAX_N: usize = 30;

fn run_solver<R: rand::Rng>(cfg: &ExperimentConfig, g: &Graph, rng: &mut R) -> Result<DecisionResult> {
    let k = cfg.k;
    let n = g.n();
    let with_hypothesis = |mut r: DecisionResult| {
        if n >= 2 {
            if let Ok(Some(gn)) = cfg.distribution.g(n) {
                r.lemma1_hypothesis = Some(lemma1_hypothesis(n, k, gn));
            }
        }
        r
    };
    Ok(match cfg.solver {
        config::SolverKind::Auto if cfg.full_enumeration && !cfg.distribution.is_dense() => {
            algorithm_b_with(g, k, true)
        }
        config::SolverKind::Auto => adaptive_decide(g, k, &cfg.distribution),
        config::SolverKind::A => with_hypothesis(algorithm_a(g, k)),
        config::SolverKind::B => algorithm_b_with(g, k, cfg.full_enumeration),
        config::SolverKind::Brute => brute_force_decide(g, k),
        config::SolverKind::Greedy => greedy_decide_with(g, k, cfg.greedy_restarts, rng)?,
    })
}

fn run_trial(cfg: &ExperimentConfig, n: usize, trial: u64, stream_id: u64) -> Result<TrialRecord> {
    let k = cfg.k;
    let mut rng = RngSeed::new(cfg.seed, stream_id).rng();
    let g = sample_gnp_with(&cfg.distribution, n, &mut rng);
    let mut rec = TrialRecord {
        n,
        k,
        trial,
        stream_id,
        edges: g.m(),
        ..Default::default()
    };
    match cfg.kind {
        ExperimentKind::ElementaryMiss => {
            let (hit, cost) = elementary_clique_scan(&g, k)?;
            rec.elementary_hit = Some(hit.is_some());
            rec.cost = Some(cost);
        }
        ExperimentKind::CliqueCensusMean | ExperimentKind::TailFrequency => {
            rec.clique_count = Some(count_cliques_of_size(&g, k));
        }
        ExperimentKind::SolverCost | ExperimentKind::AvgFptDiagnostic | ExperimentKind::TypFptDiagnostic => {
            let res = run_solver(cfg, &g, &mut rng)?;
            if n <= ORACLE_MAX_N {
                let oracle = brute_force_decide(&g, k).answer;
                let consistent = if res.path == SolverPath::GreedyHeuristic {
                    !res.answer || oracle
                } else {
                    res.answer == oracle
                };
                if !consistent {
                    return Err(Error::OracleMismatch {
                        n,
                        k,
                        trial,
                        solver: res.answer,
                        oracle,
                    });
                }
            }
            rec.answer = Some(res.answer);
            rec.cost = Some(res.cost);
            rec.path = Some(res.path.as_str().to_string());
            rec.maximal_cliques = res.maximal_cliques_seen;
            rec.lemma1_hypothesis = res.lemma1_hypothesis;
            if cfg.kind == ExperimentKind::TypFptDiagnostic {
                let s1 = cfg.effective_s1().expect("validated");
                rec.tail_sum = Some(clique_size_tail_sum(&g, s1));
                rec.clique_total = Some(count_cliques_by_size(&g).total());
            }
        }
        ExperimentKind::GreedyGap => {
            if n > 0 {
                rec.greedy_size = Some(greedy_clique(&g, 0)?.len());
                let rep = repeated_greedy_with(&g, k, cfg.greedy_restarts, &mut rng)?;
                rec.repeated_greedy_size = Some(rep.best.len());
            }
            if n <= GREEDY_EXACT_MAX_N {
                rec.max_clique_size = Some(max_clique_size_bruteforce(&g));
            }
        }
    }
    Ok(rec)
}

/// Validates `cfg`, runs every trial, and aggregates.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<(Vec<TrialRecord>, SummaryReport)> {
    cfg.validate()?;
    let tasks: Vec<(usize, u64, u64)> = cfg
        .n_grid
        .iter()
        .enumerate()
        .flat_map(|(pos, &n)| {
            (0..cfg.trials).map(move |t| (n, t, pos as u64 * cfg.trials + t))
        })
        .collect();
    let records = tasks
        .into_par_iter()
        .map(|(n, trial, stream)| run_trial(cfg, n, trial, stream))
        .collect::<Result<Vec<_>>>()?;
    let summary = summarize(cfg, &records)?;
    Ok((records, summary))
}

/// Greedy versus repeated greedy versus the exact maximum clique.
pub fn greedy_gap_experiment(cfg: &ExperimentConfig) -> Result<(Vec<TrialRecord>, SummaryReport)> {
    if cfg.kind != ExperimentKind::GreedyGap {
        return Err(Error::Config("greedy_gap_experiment needs kind greedy_gap".into()));
    }
    run_experiment(cfg)
}

/// Writes `trials.csv` and `summary.json` into `dir`, creating it if needed.
pub fn write_outputs(dir: &Path, cfg: &ExperimentConfig, records: &[TrialRecord], summary: &SummaryReport) -> Result<()> {
    fs::create_dir_all(dir)?;
    let csv = BufWriter::new(fs::File::create(dir.join("trials.csv"))?);
    write_trials_csv(csv, cfg, records)?;
    let mut json = serde_json::to_string_pretty(summary)?;
    json.push('\n');
    fs::write(dir.join("summary.json"), json)?;
    Ok(())
}
