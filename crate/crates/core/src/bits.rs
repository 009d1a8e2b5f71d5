//! Helpers for vertex subsets of graphs with at most 64 vertices.

#[inline]
pub fn members(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

#[inline]
pub fn bit(v: usize) -> u64 {
    1u64 << v
}

pub fn full(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Vertices of `within` reachable from `start` (which must be in `within`).
pub fn reach(adj: &[u64], within: u64, start: usize) -> u64 {
    let mut seen = bit(start);
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in members(frontier) {
            next |= adj[v];
        }
        next &= within & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

/// Connected components of the subgraph induced by `within`, ordered by
/// their smallest vertex.
pub fn components(adj: &[u64], within: u64) -> Vec<u64> {
    let mut rest = within;
    let mut out = Vec::new();
    while rest != 0 {
        let c = reach(adj, rest, rest.trailing_zeros() as usize);
        out.push(c);
        rest &= !c;
    }
    out
}

pub fn is_connected(adj: &[u64], within: u64) -> bool {
    within == 0 || reach(adj, within, within.trailing_zeros() as usize) == within
}

pub fn to_vec(mask: u64) -> Vec<usize> {
    members(mask).collect()
}

pub fn from_slice(vs: &[usize]) -> u64 {
    vs.iter().fold(0, |m, &v| m | bit(v))
}
