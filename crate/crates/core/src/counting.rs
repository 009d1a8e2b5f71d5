//! Counting copies of a small pattern: a brute-force oracle and a dynamic
//! program over elimination forests of low tree-depth color classes. Also
//! a verifier for sunflower configurations.

use std::collections::HashMap;
use std::rc::Rc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::members;
use crate::coloring::Coloring;
use crate::decomposition::{color_subsets, for_each_connected_set, ltd_coloring};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::iso::{automorphism_count, count_embeddings, is_isomorphic};
use crate::traversal::{connected_components, is_connected};
use crate::treedepth::{elimination_forest_within, EliminationForest, DEFAULT_BOUNDED_BUDGET};
use crate::verdict::Verdict;

pub const DEFAULT_PATTERN_LIMIT: usize = 5;
pub const DEFAULT_HOST_LIMIT: usize = 60;
pub const DEFAULT_LTD_PATTERN_LIMIT: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMode {
    /// copies of `H` as a subgraph (vertex set plus edge set)
    Subgraph,
    /// vertex sets inducing a graph isomorphic to `H`
    Induced,
}

impl std::str::FromStr for CountMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "subgraph" => Ok(CountMode::Subgraph),
            "induced" => Ok(CountMode::Induced),
            _ => Err(Error::InvalidArgument(format!("unknown count mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CountQuery<'a> {
    pub pattern: &'a Graph,
    pub host: &'a Graph,
    pub mode: CountMode,
}

impl<'a> CountQuery<'a> {
    pub fn new(pattern: &'a Graph, host: &'a Graph, mode: CountMode) -> Self {
        CountQuery { pattern, host, mode }
    }

    fn check_pattern(&self) -> Result<()> {
        if self.pattern.n() == 0 {
            return Err(Error::InvalidArgument("pattern must have a vertex".into()));
        }
        Ok(())
    }

    /// Counts that vanish for size reasons alone.
    fn trivially_zero(&self) -> bool {
        self.pattern.n() > self.host.n()
            || (self.mode == CountMode::Subgraph && self.pattern.m() > self.host.m())
    }
}

pub fn count_bruteforce(q: &CountQuery<'_>) -> Result<u64> {
    count_bruteforce_with_limits(q, DEFAULT_PATTERN_LIMIT, DEFAULT_HOST_LIMIT)
}

/// Visits every `|H|`-subset of the host (only connected ones when `H` is
/// connected) and counts copies with exactly that vertex set.
pub fn count_bruteforce_with_limits(q: &CountQuery<'_>, max_pattern: usize, max_host: usize) -> Result<u64> {
    q.check_pattern()?;
    let (h, g) = (q.pattern, q.host);
    if h.n() > max_pattern {
        return Err(Error::SizeLimit {
            what: "brute-force pattern",
            size: h.n(),
            limit: max_pattern,
        });
    }
    if g.n() > max_host {
        return Err(Error::SizeLimit {
            what: "brute-force host",
            size: g.n(),
            limit: max_host,
        });
    }
    if q.trivially_zero() {
        return Ok(0);
    }
    let aut = automorphism_count(h);
    let induced = q.mode == CountMode::Induced;
    let mut total = 0u64;
    let mut err = None;
    let mut per_set = |set: &[usize]| -> bool {
        let (sub, _) = g.induced_subgraph(set).expect("in range");
        let copies = if induced {
            u64::from(is_isomorphic(h, &sub))
        } else {
            count_embeddings(h, &sub, false) / aut
        };
        match total.checked_add(copies) {
            Some(t) => {
                total = t;
                true
            }
            None => {
                err = Some(Error::Overflow("brute-force count"));
                false
            }
        }
    };
    if is_connected(h) {
        for_each_connected_set(g, h.n(), u64::MAX, |set| set.len() != h.n() || per_set(set));
    } else {
        for_each_subset(g.n(), h.n(), &mut per_set);
    }
    match err {
        Some(e) => Err(e),
        None => Ok(total),
    }
}

/// All `k`-subsets of `0..n` in lexicographic order until `visit` is false.
fn for_each_subset(n: usize, k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) {
    fn rec(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return visit(cur);
        }
        for v in from..=n - (k - cur.len()) {
            cur.push(v);
            let go = rec(n, k, v + 1, cur, visit);
            cur.pop();
            if !go {
                return false;
            }
        }
        true
    }
    if k <= n {
        rec(n, k, 0, &mut Vec::new(), visit);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LtdCount {
    pub count: u64,
    /// palette of the low tree-depth coloring used
    pub palette: usize,
    /// number of color sets processed
    pub color_sets: usize,
}

pub fn count_ltd(q: &CountQuery<'_>) -> Result<LtdCount> {
    q.check_pattern()?;
    if q.pattern.n() > DEFAULT_LTD_PATTERN_LIMIT {
        return Err(Error::SizeLimit {
            what: "decomposition-counting pattern",
            size: q.pattern.n(),
            limit: DEFAULT_LTD_PATTERN_LIMIT,
        });
    }
    if q.trivially_zero() {
        return Ok(LtdCount {
            count: 0,
            palette: 0,
            color_sets: 0,
        });
    }
    let ltd = ltd_coloring(q.host, q.pattern.n())?;
    count_with_coloring(q, &ltd.coloring)
}

/// Counts with a supplied coloring, which must be a low tree-depth
/// coloring with parameter `|H|`. Each copy is counted once, in the color
/// set its image uses exactly.
pub fn count_with_coloring(q: &CountQuery<'_>, c: &Coloring) -> Result<LtdCount> {
    q.check_pattern()?;
    c.check_total(q.host)?;
    let (h, g) = (q.pattern, q.host);
    let mut used = c.colors.clone();
    used.sort_unstable();
    used.dedup();
    let sets = color_subsets(&used, h.n());
    let h_connected = is_connected(h);
    let embeddings = sets
        .par_iter()
        .map(|set| {
            let vs = c.vertices_with_colors(set);
            if vs.len() < h.n() {
                return Ok(0);
            }
            let (mut sub, mut back) = g.induced_subgraph(&vs)?;
            if h_connected {
                // a connected copy lies in one component holding every color of the set
                let keep: Vec<usize> = connected_components(&sub)
                    .into_iter()
                    .filter(|comp| {
                        let mut seen = 0u64;
                        for &v in comp {
                            seen |= 1 << set.iter().position(|&col| col == c.colors[back[v]]).expect("color in set");
                        }
                        comp.len() >= h.n() && seen.count_ones() as usize == set.len()
                    })
                    .flatten()
                    .map(|v| back[v])
                    .collect();
                if keep.is_empty() {
                    return Ok(0);
                }
                if keep.len() < vs.len() {
                    let mut keep = keep;
                    keep.sort_unstable();
                    (sub, back) = g.induced_subgraph(&keep)?;
                }
            }
            let forest = elimination_forest_within(&sub, set.len(), DEFAULT_BOUNDED_BUDGET)?.ok_or_else(|| {
                Error::Verification(format!("color set {set:?} induces tree-depth above {}", set.len()))
            })?;
            let local: Vec<usize> = back
                .iter()
                .map(|&v| set.iter().position(|&col| col == c.colors[v]).expect("color in set"))
                .collect();
            ForestDp::new(h, &sub, &forest, &local, set.len(), q.mode).count_exact_colors()
        })
        .try_reduce(|| 0u64, |a, b| a.checked_add(b).ok_or(Error::Overflow("embedding count")))?;
    let aut = automorphism_count(h);
    debug_assert_eq!(embeddings % aut, 0);
    Ok(LtdCount {
        count: embeddings / aut,
        palette: c.palette,
        color_sets: sets.len(),
    })
}

/// Embedding counts over an elimination forest.
///
/// State at node `x`: `sigma` places some pattern vertices on strict
/// ancestors of `x` (by depth index), and `rest` is the set of pattern
/// vertices still to place inside the subtree of `x`. Every pattern edge
/// joins comparable host vertices, so the neighbors of `rest` must lie in
/// `rest` or in the domain of `sigma`. Values are indexed by the set of
/// local colors used by the images of `rest`.
struct ForestDp<'a> {
    h_adj: Vec<u32>,
    h_n: usize,
    g: &'a Graph,
    children: Vec<Vec<usize>>,
    roots: Vec<usize>,
    chain: Vec<Vec<usize>>,
    subtree: Vec<usize>,
    color: &'a [usize],
    colors: usize,
    mode: CountMode,
    memo: HashMap<(usize, u64, u32), Rc<[u64]>>,
    zero: Rc<[u64]>,
}

const UNPLACED: u64 = 0xF;

impl<'a> ForestDp<'a> {
    fn new(h: &Graph, g: &'a Graph, f: &EliminationForest, color: &'a [usize], colors: usize, mode: CountMode) -> Self {
        let n = g.n();
        let children = f.children();
        let mut chain = vec![Vec::new(); n];
        let mut order: Vec<usize> = f.roots.clone();
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            for &c in &children[x] {
                let mut ch = chain[x].clone();
                ch.push(x);
                chain[c] = ch;
                order.push(c);
            }
            i += 1;
        }
        let mut subtree = vec![1; n];
        for &x in order.iter().rev() {
            if let Some(p) = f.parent[x] {
                subtree[p] += subtree[x];
            }
        }
        ForestDp {
            h_adj: h.vertices().map(|v| h.neighbors(v).iter().fold(0, |m, &w| m | 1 << w)).collect(),
            h_n: h.n(),
            g,
            children,
            roots: f.roots.clone(),
            chain,
            subtree,
            color,
            colors,
            mode,
            memo: HashMap::new(),
            zero: vec![0; 1 << colors].into(),
        }
    }

    fn unit(&self) -> Vec<u64> {
        let mut v = vec![0; 1 << self.colors];
        v[0] = 1;
        v
    }

    fn count_exact_colors(mut self) -> Result<u64> {
        let all = (1u32 << self.h_n) - 1;
        let roots = self.roots.clone();
        let sigma = (0..self.h_n).fold(0u64, |s, u| s | UNPLACED << (4 * u));
        let by_mask = self.combine(&roots, sigma, all)?;
        Ok(by_mask[(1 << self.colors) - 1])
    }

    fn placed(&self, sigma: u64) -> u32 {
        (0..self.h_n)
            .filter(|&u| (sigma >> (4 * u)) & 0xF != UNPLACED)
            .fold(0, |m, u| m | 1 << u)
    }

    /// Distributes `rest` over the subtrees of `nodes`.
    fn combine(&mut self, nodes: &[usize], sigma: u64, rest: u32) -> Result<Vec<u64>> {
        let subsets: Vec<u32> = submasks(rest);
        // acc[w] for w ⊆ rest: embeddings of w into the nodes seen so far
        let mut acc: Vec<Option<Vec<u64>>> = vec![None; 1 << self.h_n];
        acc[0] = Some(self.unit());
        for &c in nodes {
            let mut next: Vec<Option<Vec<u64>>> = vec![None; 1 << self.h_n];
            for &w2 in &subsets {
                let v2 = self.node(c, sigma, w2)?;
                if v2.iter().all(|&x| x == 0) {
                    continue;
                }
                for &w1 in &subsets {
                    if w2 & w1 != 0 {
                        continue;
                    }
                    let Some(v1) = &acc[w1 as usize] else { continue };
                    let slot = next[(w1 | w2) as usize].get_or_insert_with(|| vec![0; v1.len()]);
                    or_convolve_into(slot, v1, &v2)?;
                }
            }
            acc = next;
        }
        Ok(acc[rest as usize].take().unwrap_or_else(|| vec![0; 1 << self.colors]))
    }

    fn node(&mut self, x: usize, sigma: u64, rest: u32) -> Result<Rc<[u64]>> {
        if rest == 0 {
            return Ok(self.unit().into());
        }
        if (rest.count_ones() as usize) > self.subtree[x] {
            return Ok(self.zero.clone());
        }
        let placed = self.placed(sigma);
        let reach = members(rest as u64).fold(0u32, |m, u| m | self.h_adj[u]);
        if reach & !(rest | placed) != 0 {
            return Ok(self.zero.clone());
        }
        if let Some(v) = self.memo.get(&(x, sigma, rest)) {
            return Ok(v.clone());
        }
        let children = self.children[x].clone();
        // x hosts nothing
        let mut out = self.combine(&children, sigma, rest)?;
        // x hosts u
        let depth = self.chain[x].len() as u64;
        for u in members(rest as u64) {
            if !self.can_host(x, u, sigma) {
                continue;
            }
            let s2 = (sigma & !(0xF << (4 * u))) | depth << (4 * u);
            let below = self.combine(&children, s2, rest & !(1 << u))?;
            let cbit = 1usize << self.color[x];
            for (mask, &val) in below.iter().enumerate() {
                let slot = &mut out[mask | cbit];
                *slot = slot.checked_add(val).ok_or(Error::Overflow("embedding count"))?;
            }
        }
        let out: Rc<[u64]> = out.into();
        self.memo.insert((x, sigma, rest), out.clone());
        Ok(out)
    }

    fn can_host(&self, x: usize, u: usize, sigma: u64) -> bool {
        (0..self.h_n).all(|w| {
            let d = (sigma >> (4 * w)) & 0xF;
            if d == UNPLACED {
                return true;
            }
            let he = self.h_adj[u] & (1 << w) != 0;
            let ge = self.g.has_edge(x, self.chain[x][d as usize]);
            match self.mode {
                CountMode::Subgraph => !he || ge,
                CountMode::Induced => he == ge,
            }
        })
    }
}

fn submasks(mask: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut s = mask;
    loop {
        out.push(s);
        if s == 0 {
            break;
        }
        s = (s - 1) & mask;
    }
    out
}

/// `slot[a | b] += x[a] * y[b]`, checked.
fn or_convolve_into(slot: &mut [u64], x: &[u64], y: &[u64]) -> Result<()> {
    for (a, &xa) in x.iter().enumerate() {
        if xa == 0 {
            continue;
        }
        for (b, &yb) in y.iter().enumerate() {
            if yb == 0 {
                continue;
            }
            let p = xa.checked_mul(yb).ok_or(Error::Overflow("embedding count"))?;
            slot[a | b] = slot[a | b].checked_add(p).ok_or(Error::Overflow("embedding count"))?;
        }
    }
    Ok(())
}

/// A candidate `(k, F)`-sunflower: a core `C`, `k` families of petals, and
/// the partition `(K, Y_1, ..., Y_k)` of `V(F)` they should match.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sunflower {
    pub core: Vec<usize>,
    pub families: Vec<Vec<Vec<usize>>>,
    pub kernel: Vec<usize>,
    pub parts: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SunflowerViolation {
    Malformed { reason: String },
    NotDisjoint { vertex: usize },
    CrossEdges { i: usize, j: usize },
    Core,
    Petal { family: usize, index: usize },
    Tuple { choice: Vec<usize> },
}

pub const DEFAULT_TUPLE_BUDGET: u64 = 10_000;
pub const SUNFLOWER_PATTERN_LIMIT: usize = 8;

pub fn verify_sunflower(g: &Graph, f: &Graph, k: usize, s: &Sunflower) -> Result<Verdict<SunflowerViolation>> {
    verify_sunflower_with_budget(g, f, k, s, DEFAULT_TUPLE_BUDGET)
}

/// Checks disjointness, that no `F`-edge joins distinct `Y_i`, that
/// `G[C] ≅ F[K]`, that every petal `X ∈ F_i` has `G[X] ≅ F[Y_i]`, and that
/// every choice of one petal per family together with `C` induces a copy of
/// `F`. The last check is skipped as indeterminate above `budget` tuples.
pub fn verify_sunflower_with_budget(
    g: &Graph,
    f: &Graph,
    k: usize,
    s: &Sunflower,
    budget: u64,
) -> Result<Verdict<SunflowerViolation>> {
    if f.n() > SUNFLOWER_PATTERN_LIMIT {
        return Err(Error::SizeLimit {
            what: "sunflower pattern",
            size: f.n(),
            limit: SUNFLOWER_PATTERN_LIMIT,
        });
    }
    let malformed = |reason: String| Ok(Verdict::Violated(SunflowerViolation::Malformed { reason }));
    if s.families.len() != k || s.parts.len() != k {
        return malformed(format!(
            "expected {k} families and parts, got {} and {}",
            s.families.len(),
            s.parts.len()
        ));
    }
    let mut owner = vec![false; f.n()];
    for &v in s.kernel.iter().chain(s.parts.iter().flatten()) {
        if v >= f.n() || owner[v] {
            return malformed(format!("({}) is not a partition of V(F)", v));
        }
        owner[v] = true;
    }
    if owner.iter().any(|&o| !o) {
        return malformed("kernel and parts do not cover V(F)".into());
    }
    let mut seen = vec![false; g.n()];
    for &v in s.core.iter().chain(s.families.iter().flatten().flatten()) {
        g.check_vertex(v)?;
        if seen[v] {
            return Ok(Verdict::Violated(SunflowerViolation::NotDisjoint { vertex: v }));
        }
        seen[v] = true;
    }
    for i in 0..k {
        for j in i + 1..k {
            if s.parts[i].iter().any(|&a| s.parts[j].iter().any(|&b| f.has_edge(a, b))) {
                return Ok(Verdict::Violated(SunflowerViolation::CrossEdges { i, j }));
            }
        }
    }
    let induced = |gr: &Graph, vs: &[usize]| gr.induced_subgraph(vs).map(|(h, _)| h);
    if !is_isomorphic(&induced(g, &s.core)?, &induced(f, &s.kernel)?) {
        return Ok(Verdict::Violated(SunflowerViolation::Core));
    }
    for (i, fam) in s.families.iter().enumerate() {
        let target = induced(f, &s.parts[i])?;
        for (index, x) in fam.iter().enumerate() {
            if !is_isomorphic(&induced(g, x)?, &target) {
                return Ok(Verdict::Violated(SunflowerViolation::Petal { family: i, index }));
            }
        }
    }
    let tuples = s
        .families
        .iter()
        .try_fold(1u64, |acc, fam| acc.checked_mul(fam.len() as u64))
        .unwrap_or(u64::MAX);
    if tuples > budget {
        return Ok(Verdict::Indeterminate(format!(
            "{tuples} petal tuples exceed the budget of {budget}"
        )));
    }
    let mut choice = vec![0usize; k];
    for _ in 0..tuples {
        let mut vs = s.core.clone();
        for (i, &c) in choice.iter().enumerate() {
            vs.extend_from_slice(&s.families[i][c]);
        }
        if !is_isomorphic(&induced(g, &vs)?, f) {
            return Ok(Verdict::Violated(SunflowerViolation::Tuple { choice }));
        }
        // odometer, last family fastest
        for i in (0..k).rev() {
            choice[i] += 1;
            if choice[i] < s.families[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
    Ok(Verdict::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::*;
    use crate::generators::{bounded_degree, random_tree};

    fn both(h: &Graph, g: &Graph, mode: CountMode) -> (u64, u64) {
        let q = CountQuery::new(h, g, mode);
        (count_bruteforce(&q).unwrap(), count_ltd(&q).unwrap().count)
    }

    #[test]
    fn brute_force_examples() {
        let g = petersen();
        let k2 = complete(2);
        let q = CountQuery::new(&k2, &g, CountMode::Subgraph);
        assert_eq!(count_bruteforce(&q).unwrap(), 15);
        let k4 = complete(4);
        assert_eq!(count_bruteforce(&CountQuery::new(&complete(3), &k4, CountMode::Subgraph)).unwrap(), 4);
        assert_eq!(count_bruteforce(&CountQuery::new(&path(3), &k4, CountMode::Subgraph)).unwrap(), 12);
        assert_eq!(count_bruteforce(&CountQuery::new(&path(3), &k4, CountMode::Induced)).unwrap(), 0);
        let two = Graph::empty(2);
        assert_eq!(count_bruteforce(&CountQuery::new(&two, &k4, CountMode::Subgraph)).unwrap(), 6);
        assert_eq!(count_bruteforce(&CountQuery::new(&two, &k4, CountMode::Induced)).unwrap(), 0);
    }

    #[test]
    fn ltd_matches_brute_force() {
        let patterns = [path(3), path(4), complete(3), cycle(4).unwrap(), star(3)];
        let hosts = [petersen(), grid(3, 4), random_tree(15, 2), bounded_degree(20, 4, 3), complete(5)];
        for h in &patterns {
            for g in &hosts {
                for mode in [CountMode::Subgraph, CountMode::Induced] {
                    let (a, b) = both(h, g, mode);
                    assert_eq!(a, b, "{h:?} in {g:?} ({mode:?})");
                }
            }
        }
    }

    #[test]
    fn ltd_examples() {
        let (g, k2, k3) = (petersen(), complete(2), complete(3));
        assert_eq!(count_ltd(&CountQuery::new(&k2, &g, CountMode::Subgraph)).unwrap().count, 15);
        assert_eq!(count_ltd(&CountQuery::new(&k3, &g, CountMode::Subgraph)).unwrap().count, 0);
        let disconnected = Graph::empty(2);
        assert_eq!(both(&disconnected, &path(4), CountMode::Induced), (3, 3));
    }

    #[test]
    fn size_rules() {
        let big = path(6);
        assert!(count_bruteforce(&CountQuery::new(&big, &big, CountMode::Subgraph)).is_err());
        let (k4, p3, none) = (complete(4), path(3), Graph::empty(0));
        assert_eq!(count_ltd(&CountQuery::new(&k4, &p3, CountMode::Subgraph)).unwrap().count, 0);
        assert!(count_ltd(&CountQuery::new(&none, &p3, CountMode::Subgraph)).is_err());
    }

    #[test]
    fn sunflowers() {
        let g = star(3);
        let f = complete(2);
        let good = Sunflower {
            core: vec![0],
            families: vec![vec![vec![1], vec![2], vec![3]]],
            kernel: vec![0],
            parts: vec![vec![1]],
        };
        assert!(verify_sunflower(&g, &f, 1, &good).unwrap().holds());
        // vertex 3 detached from the center
        let g2 = g.without_edges(&[(0, 3)]);
        assert_eq!(
            verify_sunflower(&g2, &f, 1, &good).unwrap(),
            Verdict::Violated(SunflowerViolation::Tuple { choice: vec![2] })
        );
        let overlapping = Sunflower {
            families: vec![vec![vec![1], vec![1]]],
            ..good.clone()
        };
        assert!(verify_sunflower(&g, &f, 1, &overlapping).unwrap().is_violated());
        // triangle over an edge of K5: every common neighbor completes it
        let k5 = complete(5);
        let tri = Sunflower {
            core: vec![0, 1],
            families: vec![vec![vec![2], vec![3], vec![4]]],
            kernel: vec![0, 1],
            parts: vec![vec![2]],
        };
        assert!(verify_sunflower(&k5, &complete(3), 1, &tri).unwrap().holds());
    }

    #[test]
    fn sunflower_cross_edges_and_budget() {
        let f = path(3);
        let s = Sunflower {
            core: vec![],
            families: vec![vec![vec![0]], vec![vec![1, 2]]],
            kernel: vec![],
            parts: vec![vec![0], vec![1, 2]],
        };
        assert_eq!(
            verify_sunflower(&path(3), &f, 2, &s).unwrap(),
            Verdict::Violated(SunflowerViolation::CrossEdges { i: 0, j: 1 })
        );
        let g = star(4);
        let s = Sunflower {
            core: vec![0],
            families: vec![vec![vec![1], vec![2]], vec![vec![3], vec![4]]],
            kernel: vec![1],
            parts: vec![vec![0], vec![2]],
        };
        assert!(verify_sunflower(&g, &f, 2, &s).unwrap().holds());
        assert!(verify_sunflower_with_budget(&g, &f, 2, &s, 3).unwrap().is_indeterminate());
    }
}
