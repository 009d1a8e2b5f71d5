//! Exact densities of shallow minors, shallow topological minors and
//! shallow immersions, and the densest subgraph.
//!
//! Densities are exact rationals `‖H‖/|H|`. The shallow variants are
//! exhaustive searches guarded by size limits.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::{self, bit, members};
use crate::catalog::{complete, grid};
use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::generators::{bounded_degree, random_tree};
use crate::graph::Graph;
use crate::traversal::{bfs_distances, UNREACHABLE};

pub type Density = Ratio<i64>;

pub const DEFAULT_MINOR_LIMIT: usize = 12;
pub const DEFAULT_TOPO_LIMIT: usize = 12;
pub const DEFAULT_IMMERSION_LIMIT: usize = 10;

/// Always `p/q`, also for integers.
pub fn format_density(d: &Density) -> String {
    format!("{}/{}", d.numer(), d.denom())
}

pub fn parse_density(s: &str) -> Result<Density> {
    let bad = || Error::InvalidArgument(format!("not a rational p/q: {s:?}"));
    let (p, q) = s.split_once('/').ok_or_else(bad)?;
    let p: i64 = p.trim().parse().map_err(|_| bad())?;
    let q: i64 = q.trim().parse().map_err(|_| bad())?;
    if q == 0 {
        return Err(bad());
    }
    Ok(Ratio::new(p, q))
}

/// Serde adapter writing densities as `"p/q"` strings.
pub mod ratio_string {
    use super::{format_density, parse_density, Density};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Density, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_density(d))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Density, D::Error> {
        let s = String::deserialize(d)?;
        parse_density(&s).map_err(serde::de::Error::custom)
    }
}

/// `‖H‖/|H|`, with the empty graph at 0.
pub fn graph_density(h: &Graph) -> Density {
    if h.n() == 0 {
        Ratio::from_integer(0)
    } else {
        Ratio::new(h.m() as i64, h.n() as i64)
    }
}

fn edges_within(g: &Graph, inside: &[bool]) -> usize {
    g.edges().filter(|&(u, v)| inside[u] && inside[v]).count()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensestSubgraph {
    #[serde(with = "ratio_string")]
    pub value: Density,
    pub vertices: Vec<usize>,
}

/// Maximum of `‖H‖/|H|` over subgraphs `H`, by Dinkelbach iteration on
/// Goldberg's cut network: for the current density `a/b` a minimum cut
/// finds the set maximizing `b·‖G[S]‖ − a·|S|`.
pub fn nabla0(g: &Graph) -> DensestSubgraph {
    let n = g.n();
    if n == 0 {
        return DensestSubgraph {
            value: Ratio::from_integer(0),
            vertices: Vec::new(),
        };
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let m = edges.len();
    let mut best = graph_density(g);
    let mut witness: Vec<usize> = g.vertices().collect();
    loop {
        let (a, b) = (*best.numer(), *best.denom());
        let (s, t) = (0, 1);
        let vnode = |v: usize| 2 + m + v;
        let mut net = FlowNetwork::new(2 + m + n);
        let inf = b * m as i64 + 1;
        for (i, &(u, v)) in edges.iter().enumerate() {
            net.add_edge(s, 2 + i, b);
            net.add_edge(2 + i, vnode(u), inf);
            net.add_edge(2 + i, vnode(v), inf);
        }
        for v in 0..n {
            net.add_edge(vnode(v), t, a);
        }
        let flow = net.max_flow(s, t);
        if b * m as i64 - flow <= 0 {
            break;
        }
        let side = net.source_side(s);
        let inside: Vec<bool> = (0..n).map(|v| side[vnode(v)]).collect();
        let size = inside.iter().filter(|&&x| x).count();
        let improved = Ratio::new(edges_within(g, &inside) as i64, size as i64);
        debug_assert!(improved > best);
        best = improved;
        witness = (0..n).filter(|&v| inside[v]).collect();
    }
    DensestSubgraph { value: best, vertices: witness }
}

/// A density together with the model realizing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShallowDensity<M> {
    #[serde(with = "ratio_string")]
    pub value: Density,
    pub witness: M,
}

/// Branch sets of a depth-`r` shallow minor: vertex `i` of the minor is
/// branch set `i`, adjacent to `j` when some edge joins the two sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorModel {
    pub branch_sets: Vec<Vec<usize>>,
    pub depth: usize,
}

fn invalid(msg: String) -> Error {
    Error::Verification(msg)
}

/// Radius of `G[set]` (`None` if disconnected or empty).
pub fn induced_radius(g: &Graph, set: &[usize]) -> Result<Option<usize>> {
    if set.is_empty() {
        return Ok(None);
    }
    let (sub, _) = g.induced_subgraph(set)?;
    let mut radius = usize::MAX;
    for c in sub.vertices() {
        let ecc = bfs_distances(&sub, c).into_iter().max().unwrap_or(0);
        if ecc == UNREACHABLE {
            return Ok(None);
        }
        radius = radius.min(ecc);
    }
    Ok(Some(radius))
}

impl MinorModel {
    /// Checks the model and returns the minor it describes.
    pub fn validate(&self, g: &Graph) -> Result<Graph> {
        let mut owner = vec![usize::MAX; g.n()];
        for (i, set) in self.branch_sets.iter().enumerate() {
            for &v in set {
                g.check_vertex(v)?;
                if owner[v] != usize::MAX {
                    return Err(invalid(format!("vertex {v} lies in two branch sets")));
                }
                owner[v] = i;
            }
            match induced_radius(g, set)? {
                None => return Err(invalid(format!("branch set {i} is empty or disconnected"))),
                Some(rad) if rad > self.depth => {
                    return Err(invalid(format!(
                        "branch set {i} has radius {rad} > {}",
                        self.depth
                    )))
                }
                Some(_) => {}
            }
        }
        let minor_edges = g.edges().filter_map(|(u, v)| {
            let (a, b) = (owner[u], owner[v]);
            (a != usize::MAX && b != usize::MAX && a != b).then_some((a.min(b), a.max(b)))
        });
        Graph::from_edges(self.branch_sets.len(), minor_edges)
    }
}

/// Principal vertices and internally disjoint connecting paths; minor
/// vertex `i` is `principal[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopoModel {
    pub principal: Vec<usize>,
    pub paths: Vec<Vec<usize>>,
    pub depth: usize,
}

/// Principal vertices and edge-disjoint connecting paths, each vertex
/// internal to at most `depth` paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImmersionModel {
    pub principal: Vec<usize>,
    pub paths: Vec<Vec<usize>>,
    pub depth: usize,
}

/// Shared path checks; returns the graph on principal indices.
fn paths_graph(g: &Graph, principal: &[usize], paths: &[Vec<usize>], depth: usize) -> Result<Graph> {
    let mut index = HashMap::new();
    for (i, &v) in principal.iter().enumerate() {
        g.check_vertex(v)?;
        if index.insert(v, i).is_some() {
            return Err(invalid(format!("principal vertex {v} repeated")));
        }
    }
    let mut pairs = Vec::new();
    for (k, p) in paths.iter().enumerate() {
        if p.len() < 2 {
            return Err(invalid(format!("path {k} has no edge")));
        }
        if p.len() - 1 > 2 * depth + 1 {
            return Err(invalid(format!("path {k} has length {} > {}", p.len() - 1, 2 * depth + 1)));
        }
        let mut seen = std::collections::HashSet::new();
        for &v in p {
            g.check_vertex(v)?;
            if !seen.insert(v) {
                return Err(invalid(format!("path {k} repeats vertex {v}")));
            }
        }
        if p.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
            return Err(invalid(format!("path {k} uses a non-edge")));
        }
        let (Some(&a), Some(&b)) = (index.get(&p[0]), index.get(&p[p.len() - 1])) else {
            return Err(invalid(format!("path {k} does not join principal vertices")));
        };
        pairs.push((a.min(b), a.max(b)));
    }
    let mut sorted = pairs.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(invalid("two paths join the same principal pair".into()));
    }
    Graph::from_edges(principal.len(), pairs)
}

impl TopoModel {
    pub fn validate(&self, g: &Graph) -> Result<Graph> {
        let h = paths_graph(g, &self.principal, &self.paths, self.depth)?;
        let mut used = vec![false; g.n()];
        for &v in &self.principal {
            used[v] = true;
        }
        for (k, p) in self.paths.iter().enumerate() {
            for &v in &p[1..p.len() - 1] {
                if used[v] {
                    return Err(invalid(format!(
                        "interior vertex {v} of path {k} is principal or shared"
                    )));
                }
                used[v] = true;
            }
        }
        Ok(h)
    }
}

impl ImmersionModel {
    pub fn validate(&self, g: &Graph) -> Result<Graph> {
        let h = paths_graph(g, &self.principal, &self.paths, self.depth)?;
        let mut edges = std::collections::HashSet::new();
        let mut load = vec![0usize; g.n()];
        for (k, p) in self.paths.iter().enumerate() {
            for w in p.windows(2) {
                if !edges.insert((w[0].min(w[1]), w[0].max(w[1]))) {
                    return Err(invalid(format!("edge {}-{} reused by path {k}", w[0], w[1])));
                }
            }
            for &v in &p[1..p.len() - 1] {
                load[v] += 1;
                if load[v] > self.depth {
                    return Err(invalid(format!(
                        "vertex {v} is internal to more than {} paths",
                        self.depth
                    )));
                }
            }
        }
        Ok(h)
    }
}

fn check_limit(g: &Graph, what: &'static str, limit: usize, hard: usize) -> Result<()> {
    let limit = limit.min(hard);
    if g.n() > limit {
        return Err(Error::SizeLimit {
            what,
            size: g.n(),
            limit,
        });
    }
    Ok(())
}

/// Maximizes over `count` items. `eval(i, floor)` must return item `i`'s
/// best whenever that best is at least `floor`, finding ties in a fixed
/// order; the earliest item with the maximum wins, so the result does not
/// depend on scheduling.
fn par_best<T, F>(count: usize, eval: F) -> Option<(Density, T)>
where
    T: Send,
    F: Fn(usize, Density) -> Option<(Density, T)> + Sync,
{
    let shared = Mutex::new(Ratio::from_integer(-1));
    (0..count)
        .into_par_iter()
        .filter_map(|i| {
            let floor = *shared.lock().expect("not poisoned");
            let (v, t) = eval(i, floor)?;
            let mut s = shared.lock().expect("not poisoned");
            if v > *s {
                *s = v;
            }
            Some((v, i, t))
        })
        .reduce_with(|a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
        .map(|(v, _, t)| (v, t))
}

pub fn grad(g: &Graph, r: usize) -> Result<ShallowDensity<MinorModel>> {
    grad_with_limit(g, r, DEFAULT_MINOR_LIMIT)
}

/// `∇_r`: partitions of `V` into connected branch sets of radius at most
/// `r` are enumerated, and each quotient is scored by its densest
/// subgraph. Covering every vertex loses nothing, since the densest
/// subgraph of the quotient may drop any branch set.
pub fn grad_with_limit(g: &Graph, r: usize, limit: usize) -> Result<ShallowDensity<MinorModel>> {
    if r == 0 {
        let d = nabla0(g);
        return Ok(ShallowDensity {
            value: d.value,
            witness: MinorModel {
                branch_sets: d.vertices.iter().map(|&v| vec![v]).collect(),
                depth: 0,
            },
        });
    }
    check_limit(g, "shallow minor search", limit, 64)?;
    let n = g.n();
    if n == 0 {
        return Ok(ShallowDensity {
            value: Ratio::from_integer(0),
            witness: MinorModel {
                branch_sets: Vec::new(),
                depth: r,
            },
        });
    }
    let adj = g.neighbor_masks()?;
    let mut candidates: Vec<Vec<u64>> = Vec::with_capacity(n);
    for v in 0..n {
        let mut sets = Vec::new();
        connected_sets_with_min(&adj, v, &mut |s| {
            if bits_radius(&adj, s) <= r {
                sets.push(s);
            }
        });
        sets.sort_by_key(|&s| (s.count_ones(), s));
        candidates.push(sets);
    }
    let search = PartitionSearch {
        adj: &adj,
        candidates: &candidates,
        full: bits::full(n),
    };
    let top = &candidates[0];
    let (value, parts) = par_best(top.len(), |i, floor| {
        let mut state = BranchBest { floor, best: None };
        search.extend(&mut vec![top[i]], bits::full(n) & !top[i], &mut state);
        state.best
    })
    .expect("the singleton partition is always evaluated");
    Ok(ShallowDensity {
        value,
        witness: MinorModel {
            branch_sets: parts.into_iter().map(bits::to_vec).collect(),
            depth: r,
        },
    })
}

/// Calls `visit` on every connected set whose smallest vertex is `v`.
fn connected_sets_with_min(adj: &[u64], v: usize, visit: &mut dyn FnMut(u64)) {
    let allowed = !(bit(v) - 1);
    fn rec(adj: &[u64], allowed: u64, set: u64, ext: u64, excluded: u64, visit: &mut dyn FnMut(u64)) {
        visit(set);
        let mut ext = ext;
        let mut excluded = excluded;
        while ext != 0 {
            let u = ext.trailing_zeros() as usize;
            ext &= ext - 1;
            excluded |= bit(u);
            let grown = set | bit(u);
            let next = (ext | (adj[u] & allowed)) & !grown & !excluded;
            rec(adj, allowed, grown, next, excluded, visit);
        }
    }
    rec(adj, allowed, bit(v), adj[v] & allowed, bit(v), visit);
}

/// Radius of the subgraph induced by `set` (`usize::MAX` if disconnected).
fn bits_radius(adj: &[u64], set: u64) -> usize {
    members(set)
        .map(|c| {
            let mut seen = bit(c);
            let mut frontier = seen;
            let mut ecc = 0;
            while seen != set {
                let mut next = 0;
                for v in members(frontier) {
                    next |= adj[v];
                }
                next &= set & !seen;
                if next == 0 {
                    return usize::MAX;
                }
                seen |= next;
                frontier = next;
                ecc += 1;
            }
            ecc
        })
        .min()
        .unwrap_or(usize::MAX)
}

struct PartitionSearch<'a> {
    adj: &'a [u64],
    candidates: &'a [Vec<u64>],
    full: u64,
}

struct BranchBest {
    floor: Density,
    best: Option<(Density, Vec<u64>)>,
}

impl BranchBest {
    /// Whether a branch bounded by `bound` may still matter.
    fn open(&self, bound: Density) -> bool {
        bound >= self.floor && self.best.as_ref().is_none_or(|(b, _)| bound > *b)
    }

    fn offer(&mut self, value: Density, witness: impl FnOnce() -> Vec<u64>) {
        if self.best.as_ref().is_none_or(|(b, _)| value > *b) {
            self.best = Some((value, witness()));
        }
    }
}

impl PartitionSearch<'_> {
    fn extend(&self, parts: &mut Vec<u64>, free: u64, state: &mut BranchBest) {
        // a simple graph on k vertices has density at most (k - 1)/2
        let k_max = (parts.len() + free.count_ones() as usize) as i64;
        if !state.open(Ratio::new(k_max - 1, 2)) {
            return;
        }
        if free == 0 {
            let q = self.quotient(parts);
            let d = nabla0(&q);
            state.offer(d.value, || d.vertices.iter().map(|&i| parts[i]).collect());
            return;
        }
        let v = free.trailing_zeros() as usize;
        for &s in &self.candidates[v] {
            if s & !free == 0 {
                parts.push(s);
                self.extend(parts, free & !s, state);
                parts.pop();
            }
        }
        debug_assert!(free & !self.full == 0);
    }

    fn quotient(&self, parts: &[u64]) -> Graph {
        let touch: Vec<u64> = parts
            .iter()
            .map(|&p| members(p).fold(0, |acc, v| acc | self.adj[v]))
            .collect();
        let mut edges = Vec::new();
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                if touch[i] & parts[j] != 0 {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges(parts.len(), edges).expect("quotient is simple")
    }
}

/// Principal sets of size at least two in search order: larger first, then
/// by mask.
fn principal_sets(n: usize) -> Vec<u64> {
    let mut sets: Vec<u64> = (0..=bits::full(n)).filter(|s| s.count_ones() >= 2).collect();
    sets.sort_by_key(|&s| (std::cmp::Reverse(s.count_ones()), s));
    sets
}

fn empty_value<M>(witness: M) -> ShallowDensity<M> {
    ShallowDensity {
        value: Ratio::from_integer(0),
        witness,
    }
}

pub fn top_grad(g: &Graph, r: usize) -> Result<ShallowDensity<TopoModel>> {
    top_grad_with_limit(g, r, DEFAULT_TOPO_LIMIT)
}

/// `∇̃_r`: over principal sets, the most pairs joinable by internally
/// disjoint paths of length at most `2r + 1` avoiding other principals.
pub fn top_grad_with_limit(g: &Graph, r: usize, limit: usize) -> Result<ShallowDensity<TopoModel>> {
    check_limit(g, "shallow topological minor search", limit, 20)?;
    let n = g.n();
    let adj = g.neighbor_masks()?;
    let max_len = (2 * r + 1).min(n.saturating_sub(1)).max(1);
    // walks[a][mask]: end vertices of paths from a visiting exactly mask
    let walks: Vec<Vec<u32>> = (0..n).map(|a| path_ends(&adj, n, a, max_len)).collect();
    let sets = principal_sets(n);
    let best = par_best(sets.len(), |i, floor| topo_eval(g, &adj, &walks, sets[i], r, max_len, floor));
    Ok(match best {
        Some((value, witness)) => ShallowDensity { value, witness },
        None => empty_value(TopoModel {
            principal: if n > 0 { vec![0] } else { Vec::new() },
            paths: Vec::new(),
            depth: r,
        }),
    })
}

/// For each vertex set containing `a`, the possible last vertices of a
/// path starting at `a` that visits exactly that set (at most `max_len`
/// edges).
fn path_ends(adj: &[u64], n: usize, a: usize, max_len: usize) -> Vec<u32> {
    let mut ends = vec![0u32; 1usize << n];
    ends[bit(a) as usize] = 1 << a;
    let mut by_size: Vec<usize> = (0..ends.len()).filter(|&m| m & (1 << a) != 0).collect();
    by_size.sort_by_key(|m| m.count_ones());
    for m in by_size {
        let e = ends[m];
        if e == 0 || m.count_ones() as usize > max_len {
            continue;
        }
        for v in members(e as u64) {
            for w in members(adj[v] & !(m as u64)) {
                ends[m | (1 << w)] |= 1 << w;
            }
        }
    }
    ends
}

/// A path from `a` through exactly `mask` ending at `b`, rebuilt backwards.
fn rebuild_path(adj: &[u64], ends: &[u32], a: usize, b: usize, mask: u64) -> Vec<usize> {
    let mut path = vec![b];
    let mut m = mask;
    let mut cur = b;
    while cur != a {
        let prev_mask = m & !bit(cur);
        let prev = members(adj[cur] & prev_mask)
            .find(|&p| ends[prev_mask as usize] & (1 << p) != 0)
            .expect("path exists");
        path.push(prev);
        m = prev_mask;
        cur = prev;
    }
    path.reverse();
    path
}

fn topo_eval(
    g: &Graph,
    adj: &[u64],
    walks: &[Vec<u32>],
    s: u64,
    r: usize,
    max_len: usize,
    floor: Density,
) -> Option<(Density, TopoModel)> {
    let n = g.n();
    let k = s.count_ones() as i64;
    if Ratio::new(k - 1, 2) < floor {
        return None;
    }
    let principal = bits::to_vec(s);
    let outside = bits::full(n) & !s;
    let mut direct = Vec::new();
    // (a, b, interior masks in search order)
    let mut indirect: Vec<(usize, usize, Vec<u64>)> = Vec::new();
    for (i, &a) in principal.iter().enumerate() {
        for &b in &principal[i + 1..] {
            if adj[a] & bit(b) != 0 {
                direct.push((a, b));
                continue;
            }
            let mut options: Vec<u64> = Vec::new();
            let mut interior = outside;
            // submasks of the outside vertices, small ones first
            let mut subs = Vec::new();
            loop {
                if (interior.count_ones() as usize) < max_len {
                    subs.push(interior);
                }
                if interior == 0 {
                    break;
                }
                interior = (interior - 1) & outside;
            }
            subs.sort_by_key(|&m| (m.count_ones(), m));
            for m in subs {
                let full = m | bit(a) | bit(b);
                if m != 0
                    && walks[a][full as usize] & (1 << b) != 0
                    && !options.iter().any(|&o| o & m == o)
                {
                    options.push(m);
                }
            }
            if !options.is_empty() {
                indirect.push((a, b, options));
            }
        }
    }
    let d = direct.len() as i64;
    let free_cap = (indirect.len() as i64).min(outside.count_ones() as i64);
    if Ratio::new(d + free_cap, k) < floor {
        return None;
    }
    indirect.sort_by_key(|(a, b, o)| (o.len(), *a, *b));
    let mut best: Option<Vec<(usize, u64)>> = None;
    let mut chosen = Vec::new();
    disjoint_pack(&indirect, 0, outside, &mut chosen, &mut best, &|c| Ratio::new(d + c as i64, k) >= floor);
    let picks = best?;
    let mut paths: Vec<Vec<usize>> = direct.iter().map(|&(a, b)| vec![a, b]).collect();
    for (idx, m) in picks {
        let (a, b, _) = indirect[idx];
        paths.push(rebuild_path(adj, &walks[a], a, b, m | bit(a) | bit(b)));
    }
    paths.sort();
    let value = Ratio::new(paths.len() as i64, k);
    Some((
        value,
        TopoModel {
            principal,
            paths,
            depth: r,
        },
    ))
}

/// Branch and bound over pairs: pick an interior for pair `i` disjoint
/// from those chosen, or skip the pair. Keeps the first maximum found.
fn disjoint_pack(
    pairs: &[(usize, usize, Vec<u64>)],
    i: usize,
    free: u64,
    chosen: &mut Vec<(usize, u64)>,
    best: &mut Option<Vec<(usize, u64)>>,
    admissible: &dyn Fn(usize) -> bool,
) {
    let cap = chosen.len() + (pairs.len() - i).min(free.count_ones() as usize);
    if !admissible(cap) || best.as_ref().is_some_and(|b| cap <= b.len()) {
        return;
    }
    if i == pairs.len() {
        *best = Some(chosen.clone());
        return;
    }
    for &m in &pairs[i].2 {
        if m & !free == 0 {
            chosen.push((i, m));
            disjoint_pack(pairs, i + 1, free & !m, chosen, best, admissible);
            chosen.pop();
        }
    }
    disjoint_pack(pairs, i + 1, free, chosen, best, admissible);
}

pub fn imm_grad(g: &Graph, r: usize) -> Result<ShallowDensity<ImmersionModel>> {
    imm_grad_with_limit(g, r, DEFAULT_IMMERSION_LIMIT)
}

/// `∇̃∝_r`: over principal sets, the most pairs joinable by edge-disjoint
/// paths of length at most `2r + 1`, each vertex internal to at most `r`
/// of them.
pub fn imm_grad_with_limit(g: &Graph, r: usize, limit: usize) -> Result<ShallowDensity<ImmersionModel>> {
    check_limit(g, "shallow immersion search", limit, 16)?;
    let n = g.n();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let edge_index: HashMap<(usize, usize), usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let max_len = (2 * r + 1).min(n.saturating_sub(1)).max(1);
    let cache = PathCache {
        g,
        edge_index: &edge_index,
        max_len,
        lists: (0..n * n).map(|_| OnceLock::new()).collect(),
    };
    let sets = principal_sets(n);
    let best = par_best(sets.len(), |i, floor| imm_eval(&cache, sets[i], r, floor));
    Ok(match best {
        Some((value, witness)) => ShallowDensity { value, witness },
        None => empty_value(ImmersionModel {
            principal: if n > 0 { vec![0] } else { Vec::new() },
            paths: Vec::new(),
            depth: r,
        }),
    })
}

struct ImmPath {
    vertices: Vec<usize>,
    edges: u128,
}

struct PathCache<'a> {
    g: &'a Graph,
    edge_index: &'a HashMap<(usize, usize), usize>,
    max_len: usize,
    lists: Vec<OnceLock<Vec<ImmPath>>>,
}

impl PathCache<'_> {
    /// Simple `a`–`b` paths of bounded length, shortest first.
    fn paths(&self, a: usize, b: usize) -> &[ImmPath] {
        self.lists[a * self.g.n() + b].get_or_init(|| {
            let mut out = Vec::new();
            let mut stack = vec![a];
            let mut on = vec![false; self.g.n()];
            on[a] = true;
            self.walk(b, &mut stack, &mut on, 0, &mut out);
            out.sort_by(|x, y| x.vertices.len().cmp(&y.vertices.len()).then_with(|| x.vertices.cmp(&y.vertices)));
            out
        })
    }

    fn walk(&self, b: usize, stack: &mut Vec<usize>, on: &mut [bool], edges: u128, out: &mut Vec<ImmPath>) {
        let v = *stack.last().expect("non-empty");
        if stack.len() > self.max_len {
            return;
        }
        for &w in self.g.neighbors(v) {
            if on[w] {
                continue;
            }
            let e = edges | 1u128 << self.edge_index[&(v.min(w), v.max(w))];
            stack.push(w);
            if w == b {
                out.push(ImmPath {
                    vertices: stack.clone(),
                    edges: e,
                });
            } else {
                on[w] = true;
                self.walk(b, stack, on, e, out);
                on[w] = false;
            }
            stack.pop();
        }
    }
}

fn imm_eval(cache: &PathCache<'_>, s: u64, r: usize, floor: Density) -> Option<(Density, ImmersionModel)> {
    let k = s.count_ones() as i64;
    if Ratio::new(k - 1, 2) < floor {
        return None;
    }
    let principal = bits::to_vec(s);
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (i, &a) in principal.iter().enumerate() {
        for &b in &principal[i + 1..] {
            if !cache.paths(a, b).is_empty() {
                pairs.push((a, b));
            }
        }
    }
    let m = cache.edge_index.len();
    if Ratio::new((pairs.len().min(m)) as i64, k) < floor {
        return None;
    }
    pairs.sort_by_key(|&(a, b)| (cache.paths(a, b).len(), a, b));
    let mut search = ImmSearch {
        cache,
        pairs: &pairs,
        r,
        load: vec![0; cache.g.n()],
        chosen: Vec::new(),
        best: None,
        admissible: Box::new(move |c| Ratio::new(c as i64, k) >= floor),
    };
    let all_edges = if m >= 128 { u128::MAX } else { (1u128 << m) - 1 };
    search.run(0, all_edges);
    let picks = search.best?;
    let mut paths: Vec<Vec<usize>> = picks
        .into_iter()
        .map(|(i, j)| {
            let (a, b) = pairs[i];
            cache.paths(a, b)[j].vertices.clone()
        })
        .collect();
    paths.sort();
    Some((
        Ratio::new(paths.len() as i64, k),
        ImmersionModel {
            principal,
            paths,
            depth: r,
        },
    ))
}

struct ImmSearch<'a> {
    cache: &'a PathCache<'a>,
    pairs: &'a [(usize, usize)],
    r: usize,
    load: Vec<usize>,
    chosen: Vec<(usize, usize)>,
    best: Option<Vec<(usize, usize)>>,
    admissible: Box<dyn Fn(usize) -> bool + 'a>,
}

impl ImmSearch<'_> {
    fn run(&mut self, i: usize, free: u128) {
        let cap = self.chosen.len() + (self.pairs.len() - i).min(free.count_ones() as usize);
        if !(self.admissible)(cap) || self.best.as_ref().is_some_and(|b| cap <= b.len()) {
            return;
        }
        if i == self.pairs.len() {
            self.best = Some(self.chosen.clone());
            return;
        }
        let (a, b) = self.pairs[i];
        for (j, p) in self.cache.paths(a, b).iter().enumerate() {
            let inner = &p.vertices[1..p.vertices.len() - 1];
            if p.edges & !free != 0 || inner.iter().any(|&v| self.load[v] >= self.r) {
                continue;
            }
            for &v in inner {
                self.load[v] += 1;
            }
            self.chosen.push((i, j));
            self.run(i + 1, free & !p.edges);
            self.chosen.pop();
            for &v in inner {
                self.load[v] -= 1;
            }
        }
        self.run(i + 1, free);
    }
}

/// A certified lower bound on `∇̃_r` for graphs beyond the exact limit:
/// the better of the densest subgraph and a greedy routing between the
/// vertices of degree at least 3.
pub fn top_grad_lower_bound(g: &Graph, r: usize) -> ShallowDensity<TopoModel> {
    let d = nabla0(g);
    let inside: Vec<bool> = (0..g.n()).map(|v| d.vertices.binary_search(&v).is_ok()).collect();
    let dense = TopoModel {
        principal: d.vertices.clone(),
        paths: g.edges().filter(|&(u, v)| inside[u] && inside[v]).map(|(u, v)| vec![u, v]).collect(),
        depth: r,
    };
    let mut best = ShallowDensity {
        value: d.value,
        witness: dense,
    };
    let principal: Vec<usize> = g.vertices().filter(|&v| g.degree(v) >= 3).collect();
    if principal.len() >= 2 {
        let mut blocked = vec![false; g.n()];
        for &v in &principal {
            blocked[v] = true;
        }
        let mut paths = Vec::new();
        for (i, &a) in principal.iter().enumerate() {
            for &b in &principal[i + 1..] {
                if let Some(p) = short_path(g, a, b, &blocked, 2 * r + 1) {
                    for &v in &p[1..p.len() - 1] {
                        blocked[v] = true;
                    }
                    paths.push(p);
                }
            }
        }
        let value = Ratio::new(paths.len() as i64, principal.len() as i64);
        if value > best.value {
            best = ShallowDensity {
                value,
                witness: TopoModel {
                    principal,
                    paths,
                    depth: r,
                },
            };
        }
    }
    best
}

/// Shortest `a`–`b` path with unblocked interior and at most `max_len` edges.
fn short_path(g: &Graph, a: usize, b: usize, blocked: &[bool], max_len: usize) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; g.n()];
    let mut dist = vec![usize::MAX; g.n()];
    dist[a] = 0;
    let mut queue = std::collections::VecDeque::from([a]);
    while let Some(v) = queue.pop_front() {
        if dist[v] >= max_len {
            continue;
        }
        for &w in g.neighbors(v) {
            if dist[w] != usize::MAX {
                continue;
            }
            if w == b {
                let mut path = vec![b, v];
                let mut cur = v;
                while cur != a {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            if !blocked[w] {
                dist[w] = dist[v] + 1;
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Graph families for density profiles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `K_s` with every edge subdivided `p` times
    SubdividedCliques(usize),
    /// `s × s` grids
    Grids,
    /// random graphs of maximum degree `d` on `s` vertices
    BoundedDegree(usize),
    /// random trees on `s` vertices
    Trees,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let num = |arg: Option<&str>| -> Result<usize> {
            arg.ok_or_else(|| Error::InvalidArgument(format!("family {name} needs a parameter")))?
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad family parameter in {s:?}")))
        };
        match name {
            "subdivided_cliques" => Ok(Family::SubdividedCliques(num(arg)?)),
            "grids" => Ok(Family::Grids),
            "bounded_degree" | "bounded_degree_random" => Ok(Family::BoundedDegree(num(arg)?)),
            "trees" => Ok(Family::Trees),
            _ => Err(Error::InvalidArgument(format!("unknown family {s:?}"))),
        }
    }
}

impl Family {
    pub fn member(self, size: usize, seed: u64) -> Graph {
        match self {
            Family::SubdividedCliques(p) => complete(size).subdivide(p),
            Family::Grids => grid(size, size),
            Family::BoundedDegree(d) => bounded_degree(size, d, seed),
            Family::Trees => random_tree(size, seed),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProfileRow {
    pub size: usize,
    pub n: usize,
    pub m: usize,
    #[serde(serialize_with = "ratio_string::serialize")]
    pub top_grad: Density,
    /// false when `top_grad` is a lower bound beyond the exact limit
    pub exact: bool,
    /// `ln‖G‖ / ln|G|`
    pub log_density: Option<f64>,
    /// `ln‖H‖ / ln|H|` for the witness topological minor `H`
    pub minor_log_density: Option<f64>,
}

fn log_ratio(m: usize, n: usize) -> Option<f64> {
    (n >= 2 && m >= 1).then(|| (m as f64).ln() / (n as f64).ln())
}

pub fn density_profile(family: Family, r: usize, sizes: &[usize], seed: u64) -> Result<Vec<ProfileRow>> {
    sizes
        .iter()
        .map(|&size| {
            let g = family.member(size, seed);
            let (res, exact) = if g.n() <= DEFAULT_TOPO_LIMIT {
                (top_grad(&g, r)?, true)
            } else {
                (top_grad_lower_bound(&g, r), false)
            };
            let h = res.witness.validate(&g)?;
            Ok(ProfileRow {
                size,
                n: g.n(),
                m: g.m(),
                top_grad: res.value,
                exact,
                log_density: log_ratio(g.m(), g.n()),
                minor_log_density: log_ratio(h.m(), h.n()),
            })
        })
        .collect()
}

pub fn profile_csv(rows: &[ProfileRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
