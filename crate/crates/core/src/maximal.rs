//! Maximal-clique enumeration.
//!
//! Two independent enumerators with the same contract: every maximal clique
//! (with respect to set inclusion) is yielded exactly once, in a
//! deterministic order, and iteration can stop at any point.
//!
//! [`VertexIncremental`] is a reverse search over the prefixes
//! `G_i = G[{0..=i}]`. A node of the search tree is a maximal clique `K` of
//! `G_i`; its children are maximal cliques of `G_{i+1}`:
//!
//! - if `K ⊆ N(i+1)`, the single child `K ∪ {i+1}`;
//! - otherwise `K` itself, plus `K' = (K ∩ N(i+1)) ∪ {i+1}` when `K'` is
//!   maximal in `G_{i+1}` and the greedy completion of `K ∩ N(i+1)` inside
//!   `G_i` is exactly `K`.
//!
//! Every maximal clique of `G_{i+1}` has exactly one parent, and every node
//! has at least one child, so the leaves at depth `n - 1` are precisely the
//! maximal cliques of `G`. Work per node is `O(n·|K|)` adjacency queries and
//! the stack holds at most `2n` nodes.
//!
//! [`PivotBacktracking`] is Bron–Kerbosch with Tomita pivoting, driven by an
//! explicit stack.

use fixedbitset::FixedBitSet;

use crate::cost::Probe;
use crate::graph::{Graph, VertexSet};

pub struct VertexIncremental<'g> {
    probe: Probe<'g>,
    /// (clique as bits, prefix level `i`)
    stack: Vec<(FixedBitSet, usize)>,
    emitted: u64,
}

impl<'g> VertexIncremental<'g> {
    pub fn new(g: &'g Graph) -> Self {
        let n = g.n();
        let mut stack = Vec::new();
        if n > 0 {
            let mut root = FixedBitSet::with_capacity(n);
            root.insert(0);
            stack.push((root, 0));
        }
        VertexIncremental {
            probe: Probe::new(g),
            stack,
            emitted: 0,
        }
    }

    pub fn emitted(&self) -> u64 {
        self.emitted
    }

    /// Adjacency queries spent so far.
    pub fn cost(&self) -> u64 {
        self.probe.queries()
    }

    /// True iff no vertex of `0..=level` outside `clique` is adjacent to
    /// every member.
    fn is_maximal_in_prefix(&self, clique: &FixedBitSet, level: usize) -> bool {
        let n = self.probe.graph().n();
        let mut common = FixedBitSet::with_capacity(n);
        common.insert_range(..level + 1);
        common.difference_with(clique);
        for w in clique.ones() {
            if common.is_clear() {
                break;
            }
            self.probe.restrict(&mut common, w);
        }
        common.is_clear()
    }

    /// Greedy completion of `seed` inside `G_level`, smallest index first.
    fn complete_in_prefix(&self, seed: &FixedBitSet, level: usize) -> FixedBitSet {
        let n = self.probe.graph().n();
        let mut clique = seed.clone();
        let mut cand = FixedBitSet::with_capacity(n);
        cand.insert_range(..level + 1);
        cand.difference_with(seed);
        for w in seed.ones() {
            if cand.is_clear() {
                break;
            }
            self.probe.restrict(&mut cand, w);
        }
        while let Some(u) = cand.minimum() {
            clique.insert(u);
            cand.set(u, false);
            self.probe.restrict(&mut cand, u);
        }
        clique
    }
}

impl Iterator for VertexIncremental<'_> {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let n = self.probe.graph().n();
        while let Some((clique, level)) = self.stack.pop() {
            if level + 1 == n {
                self.emitted += 1;
                return Some(VertexSet::from_bits(&clique));
            }
            let v = level + 1;
            let mut kept = clique.clone();
            self.probe.restrict(&mut kept, v);
            if kept == clique {
                let mut child = clique;
                child.insert(v);
                self.stack.push((child, v));
                continue;
            }
            let mut extended = kept.clone();
            extended.insert(v);
            if self.is_maximal_in_prefix(&extended, v)
                && self.complete_in_prefix(&kept, level) == clique
            {
                self.stack.push((extended, v));
            }
            // popped first, so `K` is explored before `K'`
            self.stack.push((clique, v));
        }
        None
    }
}

struct Frame {
    clique: Vec<usize>,
    cand: FixedBitSet,
    excluded: FixedBitSet,
    /// Branch vertices `P \ N(pivot)`, consumed front to back.
    branches: Vec<usize>,
    next: usize,
}

pub struct PivotBacktracking<'g> {
    probe: Probe<'g>,
    stack: Vec<Frame>,
    emitted: u64,
}

impl<'g> PivotBacktracking<'g> {
    pub fn new(g: &'g Graph) -> Self {
        let n = g.n();
        let probe = Probe::new(g);
        let mut stack = Vec::new();
        if n > 0 {
            let mut cand = FixedBitSet::with_capacity(n);
            cand.insert_range(..);
            let excluded = FixedBitSet::with_capacity(n);
            stack.push(Self::frame(&probe, Vec::new(), cand, excluded));
        }
        PivotBacktracking {
            probe,
            stack,
            emitted: 0,
        }
    }

    pub fn emitted(&self) -> u64 {
        self.emitted
    }

    pub fn cost(&self) -> u64 {
        self.probe.queries()
    }

    fn frame(probe: &Probe<'_>, clique: Vec<usize>, cand: FixedBitSet, excluded: FixedBitSet) -> Frame {
        // pivot maximises |P ∩ N(u)| over P ∪ X, smallest index on ties
        let mut best: Option<(usize, usize)> = None;
        for u in cand.union(&excluded) {
            let c = probe.count_common(&cand, u);
            if best.is_none_or(|(_, bc)| c > bc) {
                best = Some((u, c));
            }
        }
        let branches = match best {
            Some((pivot, _)) => {
                let mut b = cand.clone();
                b.difference_with(probe.graph().neighbors(pivot));
                b.ones().collect()
            }
            None => Vec::new(),
        };
        Frame {
            clique,
            cand,
            excluded,
            branches,
            next: 0,
        }
    }
}

impl Iterator for PivotBacktracking<'_> {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        loop {
            let top = self.stack.last_mut()?;
            if top.cand.is_clear() {
                let frame = self.stack.pop().expect("non-empty");
                if frame.excluded.is_clear() {
                    self.emitted += 1;
                    let mut members = frame.clique;
                    members.sort_unstable();
                    return Some(VertexSet::from_sorted(members));
                }
                continue;
            }
            if top.next == top.branches.len() {
                self.stack.pop();
                continue;
            }
            let v = top.branches[top.next];
            top.next += 1;
            let mut cand = top.cand.clone();
            let mut excluded = top.excluded.clone();
            let mut clique = top.clique.clone();
            top.cand.set(v, false);
            top.excluded.insert(v);
            self.probe.restrict(&mut cand, v);
            self.probe.restrict(&mut excluded, v);
            clique.push(v);
            let frame = Self::frame(&self.probe, clique, cand, excluded);
            self.stack.push(frame);
        }
    }
}

pub fn enumerate_vertex_incremental(g: &Graph) -> VertexIncremental<'_> {
    VertexIncremental::new(g)
}

pub fn enumerate_pivot_backtracking(g: &Graph) -> PivotBacktracking<'_> {
    PivotBacktracking::new(g)
}

/// `MK(G)`, the number of maximal cliques (0 for the empty vertex set).
pub fn count_maximal_cliques(g: &Graph) -> u64 {
    let mut it = VertexIncremental::new(g);
    it.by_ref().for_each(drop);
    it.emitted()
}
