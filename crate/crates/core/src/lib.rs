//! Deterministic average-case deciders for k-Clique on Erdős–Rényi random
//! graphs, the closed-form quantities that govern their behaviour, and a
//! seed-reproducible Monte-Carlo harness that measures them.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`]: the immutable bit-row [`Graph`], vertex sets, clique
//!   predicates and the exhaustive clique census.
//! - [`dimacs`]: DIMACS edge-format parsing and serialization.
//! - [`gnp`]: natural edge-probability presets and seeded `G(n,p)` sampling.
//! - [`formulas`]: exact probabilities, expectations, thresholds and tail
//!   bounds.
//! - [`maximal`]: two independent maximal-clique enumerators.
//! - [`solvers`]: brute force, the elementary-block decider, the
//!   maximal-clique decider, the density dispatcher and greedy heuristics.
//! - [`harness`]: experiment configs, trial records and diagnostics.

pub mod cost;
pub mod dimacs;
pub mod error;
pub mod formulas;
pub mod gnp;
pub mod graph;
pub mod harness;
pub mod maximal;
pub mod solvers;

pub use error::{Error, Result};
pub use gnp::{NaturalDistribution, RngSeed};
pub use graph::{CliqueCensus, Graph, VertexSet};
pub use solvers::{DecisionResult, SolverPath};
