#![allow(dead_code)]

use avgclique::gnp::{sample_gnp, NaturalDistribution, RngSeed};
use avgclique::{DecisionResult, Graph};

/// Graph number `mask` among all labelled graphs on `n` vertices; bit `i`
/// selects the `i`-th vertex pair in lexicographic order.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Every labelled graph on at most `max_n` vertices.
pub fn all_graphs(max_n: usize) -> impl Iterator<Item = Graph> {
    (0..=max_n).flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        (0..1u64 << pairs).map(move |mask| graph_from_mask(n, mask))
    })
}

pub fn random_graph(n: usize, p: f64, seed: u64, stream: u64) -> Graph {
    sample_gnp(&NaturalDistribution::Constant(p), n, RngSeed::new(seed, stream))
}

/// Witness present iff yes, and then a `k`-clique of `g`.
pub fn witness_ok(g: &Graph, k: usize, r: &DecisionResult) -> bool {
    match &r.witness {
        Some(w) => r.answer && w.len() == k && w.fits(g.n()) && g.is_clique(w),
        None => !r.answer,
    }
}
