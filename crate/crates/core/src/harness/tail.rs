//! `Σ_{s ≥ s1} K_s(G)`, the number of cliques with at least `s1` vertices.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{count_cliques_by_size, Graph};
use crate::maximal::enumerate_vertex_incremental;

/// Largest maximal clique whose sub-cliques are expanded explicitly.
const MAX_EXPANDED_CLIQUE: usize = 24;

/// Graphs up to this order are handled by the exhaustive census.
const CENSUS_MAX_N: usize = 30;

pub fn tail_sum_by_census(g: &Graph, s1: usize) -> u64 {
    count_cliques_by_size(g).tail_sum(s1)
}

/// Expands every maximal clique with at least `s1` members into its
/// sub-cliques of size `≥ s1`, deduplicating across overlapping maximal
/// cliques. Fails if such a maximal clique exceeds 24 vertices.
pub fn tail_sum_by_maximal_cliques(g: &Graph, s1: usize) -> Result<u64> {
    let s1 = s1.max(1);
    let mut big: Vec<Vec<usize>> = Vec::new();
    for m in enumerate_vertex_incremental(g) {
        if m.len() < s1 {
            continue;
        }
        if m.len() > MAX_EXPANDED_CLIQUE {
            return Err(Error::domain(format!(
                "maximal clique of size {} is too large to expand",
                m.len()
            )));
        }
        big.push(m.into_vec());
    }
    if let [only] = big.as_slice() {
        let m = only.len() as u32;
        return Ok((0u32..1 << m).filter(|x| x.count_ones() as usize >= s1).count() as u64);
    }
    let mut keyed: HashSet<Vec<usize>> = HashSet::new();
    for members in &big {
        let m = members.len() as u32;
        for mask in 0u32..1 << m {
            if (mask.count_ones() as usize) < s1 {
                continue;
            }
            let subset: Vec<usize> = (0..m as usize)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| members[i])
                .collect();
            keyed.insert(subset);
        }
    }
    Ok(keyed.len() as u64)
}

/// Census for small graphs, maximal-clique expansion otherwise (falling back
/// to the census if a maximal clique is too large to expand).
pub fn clique_size_tail_sum(g: &Graph, s1: usize) -> u64 {
    if g.n() <= CENSUS_MAX_N {
        return tail_sum_by_census(g, s1);
    }
    tail_sum_by_maximal_cliques(g, s1).unwrap_or_else(|_| tail_sum_by_census(g, s1))
}
