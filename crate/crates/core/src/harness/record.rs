//! Per-trial measurements and their CSV form.
//!
//! The CSV file starts with three `#` comment lines (schema, generator,
//! config JSON) followed by a header row and one row per trial. Columns that
//! do not apply to an experiment kind are left empty.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, SCHEMA};
use crate::error::Result;
use crate::gnp::GENERATOR_ID;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub n: usize,
    pub k: usize,
    /// Trial index within its grid point.
    pub trial: u64,
    /// Generator stream that produced the graph.
    pub stream_id: u64,
    pub edges: usize,
    pub answer: Option<bool>,
    pub cost: Option<u64>,
    pub path: Option<String>,
    pub elementary_hit: Option<bool>,
    /// `K_k(G)`.
    pub clique_count: Option<u64>,
    /// `Σ_{s ≥ s1} K_s(G)`.
    pub tail_sum: Option<u64>,
    /// `K(G) = Σ_{s ≥ 2} K_s(G)`.
    pub clique_total: Option<u64>,
    pub maximal_cliques: Option<u64>,
    pub greedy_size: Option<usize>,
    pub repeated_greedy_size: Option<usize>,
    pub max_clique_size: Option<usize>,
    pub lemma1_hypothesis: Option<bool>,
}

/// Column names, in order.
pub const CSV_COLUMNS: &[&str] = &[
    "n",
    "k",
    "trial",
    "stream_id",
    "edges",
    "answer",
    "cost",
    "path",
    "elementary_hit",
    "clique_count",
    "tail_sum",
    "clique_total",
    "maximal_cliques",
    "greedy_size",
    "repeated_greedy_size",
    "max_clique_size",
    "lemma1_hypothesis",
];

pub fn write_trials_csv<W: Write>(mut w: W, cfg: &ExperimentConfig, records: &[TrialRecord]) -> Result<()> {
    writeln!(w, "# schema: {SCHEMA}")?;
    writeln!(w, "# generator: {GENERATOR_ID}")?;
    writeln!(w, "# config: {}", serde_json::to_string(cfg)?)?;
    let mut csv = csv::Writer::from_writer(w);
    for r in records {
        csv.serialize(r)?;
    }
    if records.is_empty() {
        csv.write_record(CSV_COLUMNS)?;
    }
    csv.flush()?;
    Ok(())
}

pub fn read_trials_csv<R: BufRead>(r: R) -> Result<Vec<TrialRecord>> {
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(r);
    let mut out = Vec::new();
    for row in reader.deserialize() {
        out.push(row?);
    }
    Ok(out)
}
