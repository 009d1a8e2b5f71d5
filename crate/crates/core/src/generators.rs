//! Seeded random graph families.
//!
//! All randomness comes from xoshiro256++ seeded through SplitMix64
//! (`Xoshiro256PlusPlus::seed_from_u64`). Integers below a bound are drawn by
//! rejection: a 64-bit output `x` is accepted when
//! `x < 2^64 - 1 - ((2^64 - 1) mod bound)` and mapped to `x mod bound`. The
//! procedures below consume outputs in a fixed order, so every family is
//! reproducible from `(parameters, seed)` in any language.

use rand_xoshiro::rand_core::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::graph::Graph;
use crate::traversal::bfs_distances;

pub struct GraphRng(Xoshiro256PlusPlus);

impl GraphRng {
    pub fn new(seed: u64) -> Self {
        GraphRng(Xoshiro256PlusPlus::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform integer in `0..bound` (`bound > 0`).
    pub fn below(&mut self, bound: usize) -> usize {
        assert!(bound > 0, "empty range");
        let bound = bound as u64;
        let limit = u64::MAX - u64::MAX % bound;
        loop {
            let x = self.0.next_u64();
            if x < limit {
                return (x % bound) as usize;
            }
        }
    }

    /// True with probability `num / den`.
    pub fn chance(&mut self, num: usize, den: usize) -> bool {
        self.below(den) < num
    }
}

/// Random recursive tree: vertex `i ≥ 1` attaches to a uniform earlier vertex.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = GraphRng::new(seed);
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.below(i), i)).collect();
    Graph::from_edges(n, edges).expect("tree edges are simple")
}

/// Random graph with maximum degree `d`: `4·n·d` uniform vertex pairs are
/// proposed and kept when both endpoints still have spare degree.
pub fn bounded_degree(n: usize, d: usize, seed: u64) -> Graph {
    let mut rng = GraphRng::new(seed);
    let mut adj = vec![Vec::<usize>::new(); n];
    if n >= 2 {
        for _ in 0..4 * n * d {
            let u = rng.below(n);
            let v = rng.below(n);
            if u != v && adj[u].len() < d && adj[v].len() < d && !adj[u].contains(&v) {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
    }
    from_adjacency(adj)
}

/// Connected graph of girth at least 5: a random recursive tree plus `2n`
/// proposed chords, each kept only if its endpoints are at distance ≥ 4.
pub fn girth5(n: usize, seed: u64) -> Graph {
    let mut rng = GraphRng::new(seed);
    let mut g = Graph::from_edges(n, (1..n).map(|i| (rng.below(i), i)).collect::<Vec<_>>())
        .expect("tree edges are simple");
    if n >= 2 {
        for _ in 0..2 * n {
            let u = rng.below(n);
            let v = rng.below(n);
            if u == v {
                continue;
            }
            let d = bfs_distances(&g, u)[v];
            if d >= 4 {
                g = g.with_edges(&[(u, v)]).expect("chord is simple");
            }
        }
    }
    g
}

/// Planar triangulation grown by repeatedly inserting a vertex into a
/// uniformly chosen inner face, starting from a triangle.
pub fn apollonian(n: usize, seed: u64) -> Graph {
    let mut rng = GraphRng::new(seed);
    let mut edges = Vec::new();
    let base = n.min(3);
    for u in 0..base {
        for v in u + 1..base {
            edges.push((u, v));
        }
    }
    let mut faces: Vec<[usize; 3]> = if n >= 3 { vec![[0, 1, 2]] } else { Vec::new() };
    for v in 3..n {
        let f = faces.swap_remove(rng.below(faces.len()));
        edges.extend(f.iter().map(|&x| (x, v)));
        faces.push([f[0], f[1], v]);
        faces.push([f[0], f[2], v]);
        faces.push([f[1], f[2], v]);
    }
    Graph::from_edges(n, edges).expect("triangulation is simple")
}

/// Erdős–Rényi G(n, p) with `p = percent / 100`, pairs visited in
/// lexicographic order.
pub fn gnp(n: usize, percent: usize, seed: u64) -> Graph {
    let mut rng = GraphRng::new(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.chance(percent, 100) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("pairs are simple")
}

fn from_adjacency(adj: Vec<Vec<usize>>) -> Graph {
    let n = adj.len();
    let edges: Vec<(usize, usize)> = adj
        .iter()
        .enumerate()
        .flat_map(|(u, ns)| ns.iter().map(move |&v| (u, v)))
        .collect();
    Graph::from_edges(n, edges).expect("adjacency is simple")
}
