//! Backtracking embeddings and isomorphisms for small pattern graphs.

use crate::graph::Graph;

/// Number of injective maps `V(h) → V(g)` sending edges to edges; with
/// `induced`, non-edges must also go to non-edges.
pub fn count_embeddings(h: &Graph, g: &Graph, induced: bool) -> u64 {
    let mut count = 0u64;
    embed(h, g, induced, &mut |_| {
        count += 1;
        true
    });
    count
}

/// First embedding in search order, as `map[pattern vertex] = host vertex`.
pub fn find_embedding(h: &Graph, g: &Graph, induced: bool) -> Option<Vec<usize>> {
    let mut found = None;
    embed(h, g, induced, &mut |m| {
        found = Some(m.to_vec());
        false
    });
    found
}

pub fn find_isomorphism(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    if a.n() != b.n() || a.m() != b.m() {
        return None;
    }
    let mut da: Vec<usize> = a.vertices().map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = b.vertices().map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return None;
    }
    find_embedding(a, b, true)
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    find_isomorphism(a, b).is_some()
}

pub fn automorphism_count(h: &Graph) -> u64 {
    count_embeddings(h, h, true)
}

/// Pattern vertices ordered so each one after the first in its component
/// has an earlier neighbor where possible; higher degree first.
fn search_order(h: &Graph) -> Vec<usize> {
    let mut order = Vec::with_capacity(h.n());
    let mut placed = vec![false; h.n()];
    while order.len() < h.n() {
        let next = h
            .vertices()
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = h.neighbors(v).iter().filter(|&&w| placed[w]).count();
                (links, h.degree(v), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
    }
    order
}

/// Calls `visit` on each embedding until it returns `false`.
fn embed(h: &Graph, g: &Graph, induced: bool, visit: &mut dyn FnMut(&[usize]) -> bool) {
    if h.n() > g.n() {
        return;
    }
    let order = search_order(h);
    let mut map = vec![usize::MAX; h.n()];
    let mut used = vec![false; g.n()];
    fn rec(
        h: &Graph,
        g: &Graph,
        induced: bool,
        order: &[usize],
        i: usize,
        map: &mut [usize],
        used: &mut [bool],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if i == order.len() {
            return visit(map);
        }
        let u = order[i];
        for x in g.vertices() {
            if used[x] || g.degree(x) < h.degree(u) {
                continue;
            }
            let fits = order[..i].iter().all(|&w| {
                let he = h.has_edge(u, w);
                let ge = g.has_edge(x, map[w]);
                if induced {
                    he == ge
                } else {
                    !he || ge
                }
            });
            if !fits {
                continue;
            }
            map[u] = x;
            used[x] = true;
            let go_on = rec(h, g, induced, order, i + 1, map, used, visit);
            used[x] = false;
            map[u] = usize::MAX;
            if !go_on {
                return false;
            }
        }
        true
    }
    rec(h, g, induced, &order, 0, &mut map, &mut used, visit);
}
