//! Exact clique and chromatic numbers for desk-scale graphs.

use crate::bits::{self, members};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_CLIQUE_LIMIT: usize = 20;
pub const DEFAULT_CHROMATIC_LIMIT: usize = 12;

fn guard(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit || size > 64 {
        Err(Error::SizeLimit {
            what,
            size,
            limit: limit.min(64),
        })
    } else {
        Ok(())
    }
}

pub fn clique_number(g: &Graph) -> Result<usize> {
    clique_number_with_limit(g, DEFAULT_CLIQUE_LIMIT)
}

pub fn clique_number_with_limit(g: &Graph, limit: usize) -> Result<usize> {
    Ok(maximum_clique_with_limit(g, limit)?.len())
}

/// A maximum clique; among maximum cliques the first found in
/// increasing-vertex branching order is returned.
pub fn maximum_clique_with_limit(g: &Graph, limit: usize) -> Result<Vec<usize>> {
    guard("clique number", g.n(), limit)?;
    let adj = g.neighbor_masks()?;
    let mut best = 0u64;
    grow(&adj, 0, bits::full(g.n()), &mut best);
    Ok(bits::to_vec(best))
}

fn grow(adj: &[u64], clique: u64, mut candidates: u64, best: &mut u64) {
    if clique.count_ones() > best.count_ones() {
        *best = clique;
    }
    while candidates != 0 {
        if clique.count_ones() + candidates.count_ones() <= best.count_ones() {
            return;
        }
        let v = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        grow(adj, clique | bits::bit(v), candidates & adj[v], best);
    }
}

pub fn chromatic_number(g: &Graph) -> Result<usize> {
    chromatic_number_with_limit(g, DEFAULT_CHROMATIC_LIMIT)
}

pub fn chromatic_number_with_limit(g: &Graph, limit: usize) -> Result<usize> {
    guard("chromatic number", g.n(), limit)?;
    if g.n() == 0 {
        return Ok(0);
    }
    let lower = maximum_clique_with_limit(g, 64)?.len();
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    (lower..=g.n())
        .find(|&k| k_colorable(g, &order, k))
        .ok_or(Error::Verification("no coloring with n colors".into()))
}

/// Iterative-deepening check: can `g` be properly colored with `k` colors?
pub fn k_colorable(g: &Graph, order: &[usize], k: usize) -> bool {
    let mut color = vec![usize::MAX; g.n()];
    fn assign(g: &Graph, order: &[usize], i: usize, k: usize, used: usize, color: &mut [usize]) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        // a fresh color is interchangeable with any other fresh one
        for c in 0..k.min(used + 1) {
            if g.neighbors(v).iter().all(|&w| color[w] != c) {
                color[v] = c;
                if assign(g, order, i + 1, k, used.max(c + 1), color) {
                    return true;
                }
                color[v] = usize::MAX;
            }
        }
        false
    }
    assign(g, order, 0, k, 0, &mut color)
}

/// Max clique restricted to a candidate set, on precomputed masks.
pub fn maximum_clique_in(adj: &[u64], candidates: u64) -> u64 {
    let mut best = 0u64;
    grow(adj, 0, candidates, &mut best);
    best
}

/// All members of `mask` pairwise adjacent?
pub fn is_clique(adj: &[u64], mask: u64) -> bool {
    members(mask).all(|v| adj[v] & mask == mask & !bits::bit(v))
}
