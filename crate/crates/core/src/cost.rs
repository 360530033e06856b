//! Adjacency-query accounting. Every decider reaches the graph through a
//! [`Probe`], so its cost is a deterministic, machine-independent count.

use std::cell::Cell;

use fixedbitset::FixedBitSet;

use crate::graph::Graph;

pub struct Probe<'g> {
    graph: &'g Graph,
    queries: Cell<u64>,
}

impl<'g> Probe<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Probe {
            graph,
            queries: Cell::new(0),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    /// One query.
    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.queries.set(self.queries.get() + 1);
        self.graph.is_adjacent(u, v)
    }

    /// `set ∩= N(v)`, charged one query per member of `set` before the
    /// intersection.
    #[inline]
    pub fn restrict(&self, set: &mut FixedBitSet, v: usize) {
        self.queries.set(self.queries.get() + set.count_ones(..) as u64);
        set.intersect_with(self.graph.neighbors(v));
    }

    /// `|set ∩ N(v)|`, charged like [`Probe::restrict`].
    #[inline]
    pub fn count_common(&self, set: &FixedBitSet, v: usize) -> usize {
        self.queries.set(self.queries.get() + set.count_ones(..) as u64);
        set.intersection_count(self.graph.neighbors(v))
    }

    pub fn queries(&self) -> u64 {
        self.queries.get()
    }
}
