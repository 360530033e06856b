//! k-Clique deciders, all instrumented with an adjacency-query counter.
//!
//! Every decider answers correctly on every input; they differ only in how
//! much work they do on typical `G(n, p)` inputs. Conventions shared by all
//! of them: `k = 0` is answered yes with the empty witness, `k > n` is
//! answered no, and `k = 1` is answered yes with witness `{0}`. Ties are
//! always broken towards the smallest vertex index.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cost::Probe;
use crate::error::{Error, Result};
use crate::formulas::lemma1_hypothesis;
use crate::gnp::{NaturalDistribution, RngSeed};
use crate::graph::{Graph, VertexSet};
use crate::maximal::VertexIncremental;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SolverPath {
    /// The elementary-block scan found a clique block.
    ElementaryHit,
    /// The elementary-block scan failed and brute force decided.
    BruteForceFallback,
    /// Decided by maximal-clique enumeration.
    MaximalEnumeration,
    BruteForceDirect,
    GreedyHeuristic,
}

impl SolverPath {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolverPath::ElementaryHit => "ElementaryHit",
            SolverPath::BruteForceFallback => "BruteForceFallback",
            SolverPath::MaximalEnumeration => "MaximalEnumeration",
            SolverPath::BruteForceDirect => "BruteForceDirect",
            SolverPath::GreedyHeuristic => "GreedyHeuristic",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DecisionResult {
    pub answer: bool,
    /// A `k`-clique, present iff `answer`.
    pub witness: Option<VertexSet>,
    /// Adjacency queries performed.
    pub cost: u64,
    pub path: SolverPath,
    /// Whether `k ≤ min{n^{1/4}, g(n)^{-1/4}}` held; only known when the
    /// input was attributed to a distribution.
    #[serde(rename = "satisfied_lemma1_hypothesis")]
    pub lemma1_hypothesis: Option<bool>,
    /// Maximal cliques enumerated, for [`SolverPath::MaximalEnumeration`].
    #[serde(skip)]
    pub maximal_cliques_seen: Option<u64>,
    /// Informational only.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl DecisionResult {
    fn new(witness: Option<VertexSet>, cost: u64, path: SolverPath, started: Instant) -> Self {
        DecisionResult {
            answer: witness.is_some(),
            witness,
            cost,
            path,
            lemma1_hypothesis: None,
            maximal_cliques_seen: None,
            wall_time: started.elapsed(),
        }
    }

    /// Equality on everything except timing.
    pub fn same_outcome(&self, other: &DecisionResult) -> bool {
        self.answer == other.answer
            && self.witness == other.witness
            && self.cost == other.cost
            && self.path == other.path
            && self.lemma1_hypothesis == other.lemma1_hypothesis
            && self.maximal_cliques_seen == other.maximal_cliques_seen
    }
}

/// Answer for `k ≤ 1` or `k > n`, which need no graph access.
fn trivial_witness(g: &Graph, k: usize) -> Option<Option<VertexSet>> {
    if k > g.n() {
        Some(None)
    } else if k <= 1 {
        Some(Some(VertexSet::from_sorted((0..k).collect())))
    } else {
        None
    }
}

/// Tries `k`-subsets in lexicographic order, abandoning any prefix that is
/// not a clique. Returns the lexicographically smallest `k`-clique.
fn brute_force_search(probe: &Probe<'_>, k: usize) -> Option<VertexSet> {
    fn extend(probe: &Probe<'_>, k: usize, from: usize, current: &mut Vec<usize>) -> bool {
        let n = probe.graph().n();
        if current.len() == k {
            return true;
        }
        let needed = k - current.len();
        for v in from..=(n - needed) {
            if current.iter().all(|&u| probe.adjacent(u, v)) {
                current.push(v);
                if extend(probe, k, v + 1, current) {
                    return true;
                }
                current.pop();
            }
        }
        false
    }
    let mut current = Vec::with_capacity(k);
    extend(probe, k, 0, &mut current).then(|| VertexSet::from_sorted(current))
}

pub fn brute_force_decide(g: &Graph, k: usize) -> DecisionResult {
    let started = Instant::now();
    if let Some(w) = trivial_witness(g, k) {
        return DecisionResult::new(w, 0, SolverPath::BruteForceDirect, started);
    }
    let probe = Probe::new(g);
    let w = brute_force_search(&probe, k);
    DecisionResult::new(w, probe.queries(), SolverPath::BruteForceDirect, started)
}

fn scan_blocks(probe: &Probe<'_>, k: usize) -> Option<usize> {
    let n = probe.graph().n();
    (0..n / k).find(|&j| {
        let base = j * k;
        (base..base + k).all(|u| (u + 1..base + k).all(|v| probe.adjacent(u, v)))
    })
}

/// Smallest `j` such that block `{jk, …, jk + k - 1}` is a clique, together
/// with the number of pair checks spent (each block stops at its first
/// missing edge).
pub fn elementary_clique_scan(g: &Graph, k: usize) -> Result<(Option<usize>, u64)> {
    if k < 2 || k > g.n() {
        return Err(Error::domain(format!(
            "elementary scan needs 2 <= k <= n, got n = {}, k = {k}",
            g.n()
        )));
    }
    let probe = Probe::new(g);
    let hit = scan_blocks(&probe, k);
    Ok((hit, probe.queries()))
}

/// Dense-case decider: scan the `⌊n/k⌋` consecutive blocks, and only if none
/// is a clique fall back to brute force.
pub fn algorithm_a(g: &Graph, k: usize) -> DecisionResult {
    let started = Instant::now();
    if let Some(w) = trivial_witness(g, k) {
        return DecisionResult::new(w, 0, SolverPath::BruteForceFallback, started);
    }
    let probe = Probe::new(g);
    if let Some(j) = scan_blocks(&probe, k) {
        let w = VertexSet::from_sorted((j * k..(j + 1) * k).collect());
        return DecisionResult::new(Some(w), probe.queries(), SolverPath::ElementaryHit, started);
    }
    let w = brute_force_search(&probe, k);
    DecisionResult::new(w, probe.queries(), SolverPath::BruteForceFallback, started)
}

/// Sparse-case decider: enumerate maximal cliques until one of size at least
/// `k` appears. With `full_enumeration` the enumeration runs to the end, so
/// the cost reflects all of `MK(G)`.
pub fn algorithm_b_with(g: &Graph, k: usize, full_enumeration: bool) -> DecisionResult {
    let started = Instant::now();
    let mut it = VertexIncremental::new(g);
    let trivial = trivial_witness(g, k);
    let mut witness = trivial.clone().flatten();
    if trivial.is_none() || full_enumeration {
        for clique in it.by_ref() {
            if witness.is_none() && trivial.is_none() && clique.len() >= k {
                witness = Some(clique.prefix(k));
                if !full_enumeration {
                    break;
                }
            }
        }
    }
    let mut r = DecisionResult::new(witness, it.cost(), SolverPath::MaximalEnumeration, started);
    r.maximal_cliques_seen = Some(it.emitted());
    r
}

pub fn algorithm_b(g: &Graph, k: usize) -> DecisionResult {
    algorithm_b_with(g, k, false)
}

/// Dispatches on the limit `c_g` of the distribution the graph is attributed
/// to: `c_g = 0` runs [`algorithm_a`], anything else (including the zero
/// distribution) runs [`algorithm_b`].
pub fn adaptive_decide(g: &Graph, k: usize, dist: &NaturalDistribution) -> DecisionResult {
    if dist.is_dense() {
        let mut r = algorithm_a(g, k);
        if g.n() >= 2 {
            let gn = dist.g(g.n()).ok().flatten().unwrap_or(0.0);
            r.lemma1_hypothesis = Some(lemma1_hypothesis(g.n(), k, gn));
        }
        r
    } else {
        algorithm_b(g, k)
    }
}

/// Adds candidates in `order`, keeping each one adjacent to every member so
/// far. The result is maximal whenever `order` lists every vertex.
fn greedy_in_order(probe: &Probe<'_>, start: usize, order: &[usize]) -> VertexSet {
    let mut members = vec![start];
    for &v in order {
        if v != start && members.iter().all(|&u| probe.adjacent(u, v)) {
            members.push(v);
        }
    }
    members.sort_unstable();
    VertexSet::from_sorted(members)
}

/// Maximal clique grown from `start` by repeatedly adding the smallest-index
/// vertex adjacent to all current members.
pub fn greedy_clique(g: &Graph, start: usize) -> Result<VertexSet> {
    if start >= g.n() {
        return Err(Error::domain(format!(
            "start vertex {start} outside 0..{}",
            g.n()
        )));
    }
    let order: Vec<usize> = (0..g.n()).collect();
    Ok(greedy_in_order(&Probe::new(g), start, &order))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepeatedGreedy {
    /// Largest clique seen; the earliest one on ties.
    pub best: VertexSet,
    /// `best.len() ≥ k`.
    pub found: bool,
    pub cost: u64,
}

/// Greedy restarted `trials` times, each from a uniformly random start
/// vertex with a uniformly shuffled candidate order.
pub fn repeated_greedy(g: &Graph, k: usize, trials: usize, seed: RngSeed) -> Result<RepeatedGreedy> {
    repeated_greedy_with(g, k, trials, &mut seed.rng())
}

pub fn repeated_greedy_with<R: Rng + ?Sized>(
    g: &Graph,
    k: usize,
    trials: usize,
    rng: &mut R,
) -> Result<RepeatedGreedy> {
    if trials == 0 {
        return Err(Error::domain("repeated greedy needs at least one trial"));
    }
    let n = g.n();
    let probe = Probe::new(g);
    let mut best = VertexSet::default();
    if n > 0 {
        let mut order: Vec<usize> = (0..n).collect();
        for _ in 0..trials {
            let start = rng.gen_range(0..n);
            order.shuffle(rng);
            let c = greedy_in_order(&probe, start, &order);
            if c.len() > best.len() {
                best = c;
            }
            if best.len() == n {
                break;
            }
        }
    }
    Ok(RepeatedGreedy {
        found: best.len() >= k,
        best,
        cost: probe.queries(),
    })
}

/// [`repeated_greedy`] packaged as a one-sided decider: a yes is certified by
/// its witness, a no only means the heuristic found nothing.
pub fn greedy_decide(g: &Graph, k: usize, trials: usize, seed: RngSeed) -> Result<DecisionResult> {
    greedy_decide_with(g, k, trials, &mut seed.rng())
}

pub fn greedy_decide_with<R: Rng + ?Sized>(
    g: &Graph,
    k: usize,
    trials: usize,
    rng: &mut R,
) -> Result<DecisionResult> {
    let started = Instant::now();
    if trials == 0 {
        return Err(Error::domain("repeated greedy needs at least one trial"));
    }
    if let Some(w) = trivial_witness(g, k) {
        return Ok(DecisionResult::new(w, 0, SolverPath::GreedyHeuristic, started));
    }
    let r = repeated_greedy_with(g, k, trials, rng)?;
    let w = r.found.then(|| r.best.prefix(k));
    Ok(DecisionResult::new(w, r.cost, SolverPath::GreedyHeuristic, started))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gnp::sample_gnp;
    use crate::graph::fixtures::*;

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::new(v.to_vec()).unwrap()
    }

    fn check_witness(g: &Graph, k: usize, r: &DecisionResult) {
        match &r.witness {
            Some(w) => {
                assert!(r.answer);
                assert_eq!(w.len(), k);
                assert!(g.is_clique(w));
            }
            None => assert!(!r.answer),
        }
    }

    #[test]
    fn brute_force_examples() {
        let r = brute_force_decide(&Graph::complete(4), 3);
        assert_eq!(r.witness, Some(vs(&[0, 1, 2])));
        assert_eq!(r.path, SolverPath::BruteForceDirect);
        assert!(!brute_force_decide(&path3(), 3).answer);
        assert!(!brute_force_decide(&octahedron(), 4).answer);
        assert!(brute_force_decide(&octahedron(), 3).answer);
    }

    #[test]
    fn boundary_k() {
        let g = path3();
        assert_eq!(brute_force_decide(&g, 0).witness, Some(vs(&[])));
        assert_eq!(brute_force_decide(&g, 1).witness, Some(vs(&[0])));
        assert!(!brute_force_decide(&g, 4).answer);
        assert!(!brute_force_decide(&Graph::empty(0), 1).answer);
        assert!(brute_force_decide(&Graph::empty(0), 0).answer);
        for r in [algorithm_a(&g, 0), algorithm_b(&g, 1), algorithm_a(&g, 7)] {
            assert_eq!(r.cost, 0);
        }
    }

    #[test]
    fn brute_force_witness_is_lexicographically_smallest() {
        // triangles {1,2,3} and {0,4,5}; {0,4,5} is smaller
        let g = Graph::from_edges(6, [(1, 2), (2, 3), (1, 3), (0, 4), (4, 5), (0, 5)]).unwrap();
        assert_eq!(brute_force_decide(&g, 3).witness, Some(vs(&[0, 4, 5])));
    }

    #[test]
    fn elementary_scan_examples() {
        assert_eq!(elementary_clique_scan(&Graph::complete(6), 3).unwrap().0, Some(0));
        assert_eq!(elementary_clique_scan(&Graph::empty(6), 3).unwrap().0, None);
        let g = Graph::from_edges(7, [(3, 4), (3, 5), (4, 5)]).unwrap();
        assert_eq!(elementary_clique_scan(&g, 3).unwrap().0, Some(1));
        assert!(elementary_clique_scan(&g, 8).is_err());
        assert!(elementary_clique_scan(&g, 1).is_err());
    }

    #[test]
    fn elementary_scan_cost_is_traced() {
        // edgeless n=6, k=3: each of 2 blocks stops after its first pair
        assert_eq!(elementary_clique_scan(&Graph::empty(6), 3).unwrap().1, 2);
        // n=7 example: block 0 fails on (0,1), block 1 checks 3 pairs
        let g = Graph::from_edges(7, [(3, 4), (3, 5), (4, 5)]).unwrap();
        assert_eq!(elementary_clique_scan(&g, 3).unwrap().1, 4);
    }

    #[test]
    fn algorithm_a_examples() {
        let r = algorithm_a(&Graph::complete(6), 3);
        assert_eq!(r.path, SolverPath::ElementaryHit);
        assert_eq!(r.cost, 3);
        assert_eq!(r.witness, Some(vs(&[0, 1, 2])));

        let g = Graph::from_edges(6, [(0, 2), (2, 4), (0, 4)]).unwrap();
        let r = algorithm_a(&g, 3);
        assert_eq!(r.path, SolverPath::BruteForceFallback);
        assert_eq!(r.witness, Some(vs(&[0, 2, 4])));

        let r = algorithm_a(&Graph::empty(10), 2);
        assert!(!r.answer);
        assert_eq!(r.path, SolverPath::BruteForceFallback);
    }

    #[test]
    fn algorithm_a_cost_with_complete_first_block() {
        for k in 2..=7 {
            let n = 3 * k;
            let mut edges = Vec::new();
            for u in 0..k {
                for v in u + 1..k {
                    edges.push((u, v));
                }
            }
            let g = Graph::from_edges(n, edges).unwrap();
            let r = algorithm_a(&g, k);
            assert_eq!(r.path, SolverPath::ElementaryHit);
            assert_eq!(r.cost, (k * (k - 1) / 2) as u64);
        }
    }

    #[test]
    fn algorithm_b_examples() {
        let r = algorithm_b(&path3(), 2);
        assert_eq!(r.witness, Some(vs(&[0, 1])));
        assert_eq!(r.path, SolverPath::MaximalEnumeration);

        let r = algorithm_b(&octahedron(), 4);
        assert!(!r.answer);
        assert_eq!(r.maximal_cliques_seen, Some(8));

        let r = algorithm_b(&Graph::complete(5), 3);
        assert_eq!(r.witness, Some(vs(&[0, 1, 2])));
    }

    #[test]
    fn algorithm_b_full_enumeration_counts_everything() {
        let g = octahedron();
        let short = algorithm_b_with(&g, 3, false);
        let full = algorithm_b_with(&g, 3, true);
        assert_eq!(short.maximal_cliques_seen, Some(1));
        assert_eq!(full.maximal_cliques_seen, Some(8));
        assert_eq!(short.witness, full.witness);
        assert!(full.cost > short.cost);
        assert_eq!(algorithm_b_with(&g, 0, true).maximal_cliques_seen, Some(8));
    }

    #[test]
    fn adaptive_dispatch() {
        let g = sample_gnp(&NaturalDistribution::Constant(0.5), 20, RngSeed::new(0, 0));
        let r = adaptive_decide(&g, 3, &NaturalDistribution::Constant(0.5));
        assert!(matches!(r.path, SolverPath::ElementaryHit | SolverPath::BruteForceFallback));
        assert!(r.lemma1_hypothesis.is_some());
        let d = NaturalDistribution::PowerLaw(1.0);
        let g = sample_gnp(&d, 20, RngSeed::new(0, 0));
        assert_eq!(adaptive_decide(&g, 3, &d).path, SolverPath::MaximalEnumeration);
        let r = adaptive_decide(&Graph::empty(10), 2, &NaturalDistribution::Zero);
        assert_eq!(r.path, SolverPath::MaximalEnumeration);
        assert!(!r.answer);
        assert!(r.cost > 0);
    }

    #[test]
    fn adaptive_agrees_with_brute_force() {
        let presets = [
            NaturalDistribution::Constant(0.5),
            NaturalDistribution::InverseLog,
            NaturalDistribution::PowerLaw(0.5),
            NaturalDistribution::CriticalWindow(4),
        ];
        for t in 0..1000u64 {
            let d = presets[t as usize % presets.len()];
            let n = (t as usize * 7) % 26;
            let k = (t as usize / 4) % 8;
            let g = sample_gnp(&d, n, RngSeed::new(77, t));
            let r = adaptive_decide(&g, k, &d);
            assert_eq!(r.answer, brute_force_decide(&g, k).answer, "t={t}");
            check_witness(&g, k, &r);
        }
    }

    #[test]
    fn deciders_are_deterministic() {
        let g = sample_gnp(&NaturalDistribution::Constant(0.4), 22, RngSeed::new(3, 3));
        for k in 2..6 {
            assert!(algorithm_a(&g, k).same_outcome(&algorithm_a(&g, k)));
            assert!(algorithm_b(&g, k).same_outcome(&algorithm_b(&g, k)));
            let s = RngSeed::new(1, 2);
            assert!(greedy_decide(&g, k, 20, s).unwrap().same_outcome(&greedy_decide(&g, k, 20, s).unwrap()));
        }
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(greedy_clique(&Graph::complete(4), 2).unwrap(), vs(&[0, 1, 2, 3]));
        assert_eq!(greedy_clique(&path3(), 1).unwrap(), vs(&[0, 1]));
        assert!(greedy_clique(&path3(), 3).is_err());
    }

    #[test]
    fn greedy_output_is_maximal() {
        for t in 0..1000u64 {
            let n = 1 + t as usize % 40;
            let p = [0.1, 0.3, 0.5, 0.9][t as usize % 4];
            let g = sample_gnp(&NaturalDistribution::Constant(p), n, RngSeed::new(5, t));
            let c = greedy_clique(&g, t as usize % n).unwrap();
            assert!(g.is_maximal_clique(&c));
        }
    }

    #[test]
    fn repeated_greedy_examples() {
        let r = repeated_greedy(&Graph::complete(5), 5, 1, RngSeed::new(0, 0)).unwrap();
        assert_eq!(r.best, vs(&[0, 1, 2, 3, 4]));
        assert!(r.found);
        let r = repeated_greedy(&Graph::empty(10), 2, 100, RngSeed::new(0, 0)).unwrap();
        assert!(!r.found);
        assert_eq!(r.best.len(), 1);
        assert!(repeated_greedy(&Graph::empty(3), 2, 0, RngSeed::new(0, 0)).is_err());
    }

    #[test]
    fn repeated_greedy_on_dense_graph_returns_a_clique() {
        let g = sample_gnp(&NaturalDistribution::Constant(0.5), 200, RngSeed::new(12, 0));
        let r = repeated_greedy(&g, 12, 2_000, RngSeed::new(12, 1)).unwrap();
        assert!(g.is_maximal_clique(&r.best));
        assert!(r.best.len() >= greedy_clique(&g, 0).unwrap().len().min(r.best.len()));
        let again = repeated_greedy(&g, 12, 2_000, RngSeed::new(12, 1)).unwrap();
        assert_eq!(r, again);
    }

    #[test]
    fn greedy_decide_is_one_sided() {
        let g = octahedron();
        let r = greedy_decide(&g, 3, 10, RngSeed::new(0, 0)).unwrap();
        check_witness(&g, 3, &r);
        assert!(r.answer);
        assert!(!greedy_decide(&g, 4, 10, RngSeed::new(0, 0)).unwrap().answer);
    }
}
