//! `avgclique` command-line front end.
//!
//! Exit codes: 0 success, 1 a "no" from `decide`, 2 usage error, 3 runtime
//! or input error. Every error is written to stderr prefixed with `error:`.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use avgclique::dimacs::{parse_dimacs, write_dimacs};
use avgclique::formulas::{
    dependency_degree_bound, expected_clique_count, expected_total_cliques, jr_tail_bound,
    lemma1_bound, prob_no_elementary_clique_exact, s0_threshold, s1_threshold, CliqueExpectation,
    DependencyDegree, Lemma1Bound,
};
use avgclique::graph::count_cliques_by_size;
use avgclique::harness::{run_experiment, write_outputs, ExperimentConfig};
use avgclique::maximal::{enumerate_pivot_backtracking, enumerate_vertex_incremental};
use avgclique::solvers::{
    adaptive_decide, algorithm_a, algorithm_b, brute_force_decide, greedy_decide,
};
use avgclique::{CliqueCensus, Graph, NaturalDistribution, RngSeed};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

const SCHEMA: &str = "v1";
const THREADS_ENV: &str = "AVGCLIQUE_THREADS";

#[derive(Parser, Debug)]
#[command(name = "avgclique", version, about = "k-Clique on Erdős–Rényi random graphs")]
struct Cli {
    /// Worker threads for experiments (overrides AVGCLIQUE_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample G(n, p(n)) and write it as DIMACS to stdout.
    Sample {
        /// Distribution as JSON, e.g. '{"kind":"constant","p":0.5}'.
        #[arg(long)]
        dist: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        stream: u64,
    },
    /// Decide whether a DIMACS graph has a k-clique.
    Decide {
        #[arg(long, value_enum, default_value_t = Algo::Auto)]
        algo: Algo,
        #[arg(long)]
        k: usize,
        /// DIMACS file; stdin when absent.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Distribution the graph was drawn from, used by `auto`.
        #[arg(long)]
        dist: Option<String>,
        /// Restarts for `greedy`.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Seed for `greedy`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include wall time in the output.
        #[arg(long)]
        timing: bool,
    },
    /// Stream maximal cliques, one sorted 1-based vertex list per line.
    Enumerate {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Enumerator::Incremental)]
        method: Enumerator,
    },
    /// Count cliques of every size.
    Census {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Largest n accepted without --force.
        #[arg(long, default_value_t = 20)]
        max_n_guard: usize,
        #[arg(long)]
        force: bool,
    },
    /// Run an experiment from a JSON config.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Evaluate the closed-form quantities for given parameters.
    Formulas {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        s: usize,
        /// Clique size for the elementary-clique quantities.
        #[arg(long)]
        k: Option<usize>,
        /// Exponent g with p = n^{-g}; derived from n and p when absent.
        #[arg(long)]
        g: Option<f64>,
        /// Limit exponent for the s0/s1 thresholds.
        #[arg(long)]
        c_g: Option<f64>,
        /// Deviation for the upper-tail bound.
        #[arg(long)]
        t: Option<f64>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Algo {
    Auto,
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
    Brute,
    Greedy,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Enumerator {
    Incremental,
    Pivot,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<avgclique::Error> for Failure {
    fn from(e: avgclique::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    configure_threads(cli.threads)?;
    match cli.command {
        Command::Sample { dist, n, seed, stream } => {
            let dist = parse_dist(&dist)?;
            let g = avgclique::gnp::sample_gnp(&dist, n, RngSeed::new(seed, stream));
            let mut out = BufWriter::new(io::stdout().lock());
            write_dimacs(&g, &mut out)?;
            out.flush()?;
            Ok(0)
        }
        Command::Decide { algo, k, input, dist, trials, seed, timing } => {
            let dist = dist.as_deref().map(parse_dist).transpose()?;
            let g = read_graph(input.as_deref())?;
            let result = match algo {
                Algo::Auto => match &dist {
                    Some(d) => adaptive_decide(&g, k, d),
                    None => algorithm_b(&g, k),
                },
                Algo::A => algorithm_a(&g, k),
                Algo::B => algorithm_b(&g, k),
                Algo::Brute => brute_force_decide(&g, k),
                Algo::Greedy => greedy_decide(&g, k, trials, RngSeed::new(seed, 0))?,
            };
            print_json(&DecideOutput {
                schema: SCHEMA,
                n: g.n(),
                k,
                answer: result.answer,
                witness: result
                    .witness
                    .as_ref()
                    .map(|w| w.as_slice().iter().map(|v| v + 1).collect()),
                cost: result.cost,
                path: result.path.as_str(),
                satisfied_lemma1_hypothesis: result.lemma1_hypothesis,
                wall_time_ms: timing.then_some(result.wall_time.as_secs_f64() * 1e3),
            })?;
            Ok(if result.answer { 0 } else { 1 })
        }
        Command::Enumerate { input, method } => {
            let g = read_graph(input.as_deref())?;
            let mut out = BufWriter::new(io::stdout().lock());
            let cliques: Box<dyn Iterator<Item = _>> = match method {
                Enumerator::Incremental => Box::new(enumerate_vertex_incremental(&g)),
                Enumerator::Pivot => Box::new(enumerate_pivot_backtracking(&g)),
            };
            for c in cliques {
                writeln!(out, "{}", c.to_one_based_string())?;
            }
            out.flush()?;
            Ok(0)
        }
        Command::Census { input, max_n_guard, force } => {
            let g = read_graph(input.as_deref())?;
            if g.n() > max_n_guard && !force {
                return Err(Failure::Runtime(format!(
                    "census refused for n = {} above guard {max_n_guard}; pass --force to override",
                    g.n()
                )));
            }
            let census = count_cliques_by_size(&g);
            print_json(&CensusOutput {
                schema: SCHEMA,
                n: g.n(),
                max_clique_size: census.max_size(),
                census: &census,
            })?;
            Ok(0)
        }
        Command::Experiment { config, out_dir } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| Failure::Runtime(format!("{}: {e}", config.display())))?;
            let cfg = ExperimentConfig::from_json(&text)?;
            let (records, summary) = run_experiment(&cfg)?;
            write_outputs(&out_dir, &cfg, &records, &summary)?;
            print_json(&serde_json::json!({
                "schema": SCHEMA,
                "trials": records.len(),
                "trials_csv": out_dir.join("trials.csv"),
                "summary_json": out_dir.join("summary.json"),
                "all_checks_pass": summary.all_checks_pass(),
            }))?;
            Ok(0)
        }
        Command::Formulas { n, p, s, k, g, c_g, t } => {
            print_json(&formulas(n, p, s, k, g, c_g, t)?)?;
            Ok(0)
        }
    }
}

/// `DecisionResult` with the witness renumbered to match DIMACS.
#[derive(Serialize)]
struct DecideOutput {
    schema: &'static str,
    n: usize,
    k: usize,
    answer: bool,
    /// 1-based vertex ids.
    witness: Option<Vec<usize>>,
    cost: u64,
    path: &'static str,
    satisfied_lemma1_hypothesis: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_ms: Option<f64>,
}

#[derive(Serialize)]
struct CensusOutput<'a> {
    schema: &'static str,
    n: usize,
    max_clique_size: usize,
    #[serde(flatten)]
    census: &'a CliqueCensus,
}

#[derive(Serialize)]
struct Elementary {
    k: usize,
    miss_probability_exact: f64,
    bound: Option<Lemma1Bound>,
}

#[derive(Serialize)]
struct Thresholds {
    c_g: f64,
    s0: usize,
    s1: usize,
}

#[derive(Serialize)]
struct TailBound {
    t: f64,
    bound: f64,
}

#[derive(Serialize)]
struct FormulasOutput {
    schema: &'static str,
    n: usize,
    p: f64,
    s: usize,
    g: Option<f64>,
    mu_s: CliqueExpectation,
    expected_total_cliques: f64,
    dependency_degree: DependencyDegree,
    elementary: Option<Elementary>,
    thresholds: Option<Thresholds>,
    tail: Option<TailBound>,
}

fn formulas(
    n: usize,
    p: f64,
    s: usize,
    k: Option<usize>,
    g: Option<f64>,
    c_g: Option<f64>,
    t: Option<f64>,
) -> Result<FormulasOutput, Failure> {
    // p = n^{-g}
    let g = g.or_else(|| (n >= 2 && p > 0.0).then(|| -p.ln() / (n as f64).ln()));
    let mu_s = expected_clique_count(n, p, s, g)?;
    let dependency_degree = dependency_degree_bound(n, s)?;
    let elementary = match k {
        Some(k) => Some(Elementary {
            k,
            miss_probability_exact: prob_no_elementary_clique_exact(n, k, p)?,
            bound: g.map(|g| lemma1_bound(n, k, g)),
        }),
        None => None,
    };
    let thresholds = match c_g {
        Some(c) => Some(Thresholds { c_g: c, s0: s0_threshold(c)?, s1: s1_threshold(c)? }),
        None => None,
    };
    let tail = match t {
        Some(t) => Some(TailBound {
            t,
            bound: jr_tail_bound(mu_s.mu, t, dependency_degree.bound as f64)?,
        }),
        None => None,
    };
    Ok(FormulasOutput {
        schema: SCHEMA,
        n,
        p,
        s,
        g,
        mu_s,
        expected_total_cliques: expected_total_cliques(n, p)?,
        dependency_degree,
        elementary,
        thresholds,
        tail,
    })
}

fn configure_threads(flag: Option<usize>) -> Result<(), Failure> {
    let threads = match flag {
        Some(t) => Some(t),
        None => match std::env::var(THREADS_ENV) {
            Ok(v) if !v.trim().is_empty() => Some(v.trim().parse().map_err(|_| {
                Failure::Usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))
            })?),
            _ => None,
        },
    };
    match threads {
        Some(0) => Err(Failure::Usage("thread count must be at least 1".into())),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::Runtime(e.to_string())),
        None => Ok(()),
    }
}

fn parse_dist(text: &str) -> Result<NaturalDistribution, Failure> {
    NaturalDistribution::from_json(text).map_err(|e| Failure::Usage(format!("--dist: {e}")))
}

fn read_graph(input: Option<&Path>) -> Result<Graph, Failure> {
    match input {
        Some(path) => {
            let file = File::open(path)
                .map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?;
            Ok(parse_dimacs(BufReader::new(file))?)
        }
        None => Ok(parse_dimacs(io::stdin().lock())?),
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}
