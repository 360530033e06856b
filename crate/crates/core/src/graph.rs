//! Simple undirected graphs on `0..n` stored as one adjacency bit-row per
//! vertex, together with clique predicates and the exhaustive clique census.

use std::collections::BTreeMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Immutable simple undirected graph.
///
/// Row `v` holds the neighbourhood of `v`; rows are kept symmetric and the
/// diagonal is always clear.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    rows: Vec<FixedBitSet>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            rows: vec![FixedBitSet::with_capacity(n); n],
            m: 0,
        }
    }

    /// The complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let mut rows = Vec::with_capacity(n);
        for v in 0..n {
            let mut row = FixedBitSet::with_capacity(n);
            row.insert_range(..);
            row.set(v, false);
            rows.push(row);
        }
        Graph {
            rows,
            m: n * n.saturating_sub(1) / 2,
        }
    }

    /// Builds a graph from unordered pairs. Repeated pairs (in either
    /// orientation) collapse to a single edge.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::malformed(format!(
                    "edge ({u},{v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::malformed(format!("self-loop at vertex {u}")));
            }
            b.add_edge(u, v);
        }
        Ok(b.build())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    /// Neighbourhood of `v` as a bit-row of length `n`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones(..)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut rows = Vec::with_capacity(n);
        for (v, row) in self.rows.iter().enumerate() {
            let mut c = row.clone();
            c.toggle_range(..);
            c.set(v, false);
            rows.push(c);
        }
        Graph {
            rows,
            m: n * n.saturating_sub(1) / 2 - self.m,
        }
    }

    /// True iff every pair of members is adjacent. Sets of size at most one
    /// are cliques; a member outside `0..n` makes the answer false.
    pub fn is_clique(&self, s: &VertexSet) -> bool {
        let vs = s.as_slice();
        if vs.iter().any(|&v| v >= self.n()) {
            return false;
        }
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.is_adjacent(u, v)))
    }

    /// True iff no pair of members is adjacent.
    pub fn is_independent_set(&self, s: &VertexSet) -> bool {
        let vs = s.as_slice();
        if vs.iter().any(|&v| v >= self.n()) {
            return false;
        }
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| !self.is_adjacent(u, v)))
    }

    /// True iff `s` is a clique with no common neighbour outside it.
    pub fn is_maximal_clique(&self, s: &VertexSet) -> bool {
        if !self.is_clique(s) {
            return false;
        }
        let mut common = FixedBitSet::with_capacity(self.n());
        common.insert_range(..);
        for &v in s.as_slice() {
            common.intersect_with(&self.rows[v]);
        }
        common.is_clear()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.m)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Mutable staging area for a [`Graph`]. Callers are trusted to pass valid,
/// distinct endpoints.
pub(crate) struct GraphBuilder {
    rows: Vec<FixedBitSet>,
    m: usize,
}

impl GraphBuilder {
    pub(crate) fn new(n: usize) -> Self {
        GraphBuilder {
            rows: vec![FixedBitSet::with_capacity(n); n],
            m: 0,
        }
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        if !self.rows[u].put(v) {
            self.rows[v].insert(u);
            self.m += 1;
        }
    }

    pub(crate) fn build(self) -> Graph {
        Graph {
            rows: self.rows,
            m: self.m,
        }
    }
}

/// Sorted, duplicate-free list of vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    /// Accepts members in any order; duplicates are rejected.
    pub fn new(mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::malformed("vertex set contains a duplicate"));
        }
        Ok(VertexSet(members))
    }

    /// Caller guarantees `members` is strictly increasing.
    pub(crate) fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet(members)
    }

    pub fn from_bits(bits: &FixedBitSet) -> Self {
        VertexSet(bits.ones().collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// All members are below `n`.
    pub fn fits(&self, n: usize) -> bool {
        self.0.last().is_none_or(|&v| v < n)
    }

    /// The first `k` members, i.e. the lexicographically smallest
    /// `k`-subset.
    pub fn prefix(&self, k: usize) -> VertexSet {
        VertexSet(self.0[..k.min(self.0.len())].to_vec())
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// Space-separated 1-based labels.
    pub fn to_one_based_string(&self) -> String {
        self.0
            .iter()
            .map(|v| (v + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Number of cliques of each size. `count(1) = n`; `total()` sums sizes two
/// and up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueCensus {
    /// `by_size[s]` is `K_s(G)`; index 0 is unused and always zero.
    by_size: Vec<u64>,
}

impl CliqueCensus {
    pub fn count(&self, s: usize) -> u64 {
        if s == 0 {
            return 0;
        }
        self.by_size.get(s).copied().unwrap_or(0)
    }

    /// `K(G)`: the number of cliques with at least two vertices.
    pub fn total(&self) -> u64 {
        self.by_size.iter().skip(2).sum()
    }

    /// Largest `s` with a nonzero count, 0 for the empty graph.
    pub fn max_size(&self) -> usize {
        self.by_size.iter().rposition(|&c| c > 0).unwrap_or(0)
    }

    /// `Σ_{s ≥ from} K_s(G)`.
    pub fn tail_sum(&self, from: usize) -> u64 {
        self.by_size.iter().skip(from.max(1)).sum()
    }

    /// Nonzero counts keyed by size.
    pub fn counts(&self) -> BTreeMap<usize, u64> {
        self.by_size
            .iter()
            .enumerate()
            .filter(|&(s, &c)| s >= 1 && c > 0)
            .map(|(s, &c)| (s, c))
            .collect()
    }
}

impl Serialize for CliqueCensus {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("CliqueCensus", 2)?;
        st.serialize_field("counts", &self.counts())?;
        st.serialize_field("total", &self.total())?;
        st.end()
    }
}

/// Exact clique census by depth-first extension: a clique is only ever
/// extended by vertices larger than its current maximum, so each clique is
/// visited exactly once.
pub fn count_cliques_by_size(g: &Graph) -> CliqueCensus {
    let n = g.n();
    let mut by_size = vec![0u64; n + 1];
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    extend_census(g, &all, 0, usize::MAX, &mut by_size);
    CliqueCensus { by_size }
}

fn extend_census(g: &Graph, cand: &FixedBitSet, depth: usize, limit: usize, by_size: &mut [u64]) {
    for v in cand.ones() {
        by_size[depth + 1] += 1;
        if depth + 1 >= limit {
            continue;
        }
        let mut next = cand.clone();
        next.intersect_with(g.neighbors(v));
        // keep only vertices above v
        next.remove_range(..v + 1);
        if !next.is_clear() {
            extend_census(g, &next, depth + 1, limit, by_size);
        }
    }
}

/// `K_s(G)` alone; does not descend past depth `s`.
pub fn count_cliques_of_size(g: &Graph, s: usize) -> u64 {
    if s == 0 {
        return 1;
    }
    let n = g.n();
    if s > n {
        return 0;
    }
    let mut by_size = vec![0u64; n + 1];
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    extend_census(g, &all, 0, s, &mut by_size);
    by_size[s]
}

/// Size of a maximum clique; 0 when `n = 0`.
pub fn max_clique_size_bruteforce(g: &Graph) -> usize {
    let n = g.n();
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    let mut best = 0;
    max_extend(g, &all, 0, &mut best);
    best
}

fn max_extend(g: &Graph, cand: &FixedBitSet, depth: usize, best: &mut usize) {
    if depth > *best {
        *best = depth;
    }
    let mut remaining = cand.count_ones(..);
    for v in cand.ones() {
        // even taking every remaining candidate cannot beat `best`
        if depth + remaining <= *best {
            return;
        }
        remaining -= 1;
        let mut next = cand.clone();
        next.intersect_with(g.neighbors(v));
        next.remove_range(..v + 1);
        max_extend(g, &next, depth + 1, best);
    }
}
