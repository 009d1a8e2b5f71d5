use std::collections::{BTreeSet, VecDeque};

use crate::graph::Graph;

/// Distance sentinel for unreachable vertices.
pub const UNREACHABLE: usize = usize::MAX;

/// Hop distances from `source`; [`UNREACHABLE`] where no path exists.
pub fn bfs_distances(g: &Graph, source: usize) -> Vec<usize> {
    let mut dist = vec![UNREACHABLE; g.n()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if dist[v] == UNREACHABLE {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// All-pairs hop distances by repeated BFS.
pub fn distance_matrix(g: &Graph) -> Vec<Vec<usize>> {
    g.vertices().map(|v| bfs_distances(g, v)).collect()
}

/// Vertices within distance `r` of `v`, sorted.
pub fn ball(g: &Graph, v: usize, r: usize) -> Vec<usize> {
    let d = bfs_distances(g, v);
    g.vertices().filter(|&u| d[u] <= r).collect()
}

/// Components as sorted vertex lists, ordered by smallest member.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let mut comp = vec![usize::MAX; g.n()];
    let mut out = Vec::new();
    for s in g.vertices() {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[s] = id;
        let mut members = vec![s];
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &v in g.neighbors(u) {
                if comp[v] == usize::MAX {
                    comp[v] = id;
                    members.push(v);
                    stack.push(v);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

pub fn is_connected(g: &Graph) -> bool {
    connected_components(g).len() <= 1
}

/// Length of a shortest cycle, `None` for forests.
pub fn girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for s in g.vertices() {
        let mut dist = vec![UNREACHABLE; g.n()];
        let mut parent = vec![usize::MAX; g.n()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if dist[v] == UNREACHABLE {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if parent[u] != v {
                    let len = dist[u] + dist[v] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// A smallest-last vertex ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degeneracy {
    /// Vertices in removal order (minimum remaining degree first, ties by id).
    pub removal_order: Vec<usize>,
    /// Remaining degree of each vertex at the moment it was removed.
    pub back_degree: Vec<usize>,
    pub degeneracy: usize,
}

pub fn degeneracy(g: &Graph) -> Degeneracy {
    let n = g.n();
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, usize)> = g.vertices().map(|v| (deg[v], v)).collect();
    let mut removed = vec![false; n];
    let mut removal_order = Vec::with_capacity(n);
    let mut back_degree = vec![0; n];
    let mut degeneracy = 0;
    while let Some((d, v)) = queue.pop_first() {
        removed[v] = true;
        removal_order.push(v);
        back_degree[v] = d;
        degeneracy = degeneracy.max(d);
        for &w in g.neighbors(v) {
            if !removed[w] {
                queue.remove(&(deg[w], w));
                deg[w] -= 1;
                queue.insert((deg[w], w));
            }
        }
    }
    Degeneracy {
        removal_order,
        back_degree,
        degeneracy,
    }
}

/// Greedy coloring in reverse smallest-last order: each vertex takes the
/// least color unused by its already-colored neighbors. Uses at most
/// degeneracy + 1 colors.
pub fn smallest_last_coloring(g: &Graph) -> Vec<usize> {
    let order = degeneracy(g).removal_order;
    let mut color = vec![usize::MAX; g.n()];
    for &v in order.iter().rev() {
        let mut used: Vec<usize> = g
            .neighbors(v)
            .iter()
            .map(|&w| color[w])
            .filter(|&c| c != usize::MAX)
            .collect();
        used.sort_unstable();
        used.dedup();
        color[v] = used
            .iter()
            .enumerate()
            .find(|&(i, &c)| i != c)
            .map_or(used.len(), |(i, _)| i);
    }
    color
}
