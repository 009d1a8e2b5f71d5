//! Tree-depth: exact computation with elimination-forest witnesses,
//! centered-coloring and vertex-ranking checks, DFS bounds.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bits::{self, bit, members};
use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::traversal::{connected_components, degeneracy};

pub const DEFAULT_EXACT_LIMIT: usize = 18;
pub const DEFAULT_BRUTE_FORCE_LIMIT: usize = 14;
pub const DEFAULT_BOUNDED_BUDGET: u64 = 5_000_000;

/// Rooted forest on the vertices of a graph. `height` counts vertices on
/// the longest root-to-leaf chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationForest {
    pub parent: Vec<Option<usize>>,
    pub roots: Vec<usize>,
    pub height: usize,
}

impl EliminationForest {
    /// Builds a forest from a parent array, rejecting cycles and
    /// out-of-range parents.
    pub fn from_parents(parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        let mut depth = vec![0usize; n];
        for v in 0..n {
            // walk up, bounded by n steps
            let mut d = 1;
            let mut x = v;
            while let Some(p) = parent[x] {
                if p >= n {
                    return Err(Error::VertexOutOfRange { vertex: p, n });
                }
                d += 1;
                if d > n {
                    return Err(Error::InvalidArgument("parent relation has a cycle".into()));
                }
                x = p;
            }
            depth[v] = d;
        }
        let roots = (0..n).filter(|&v| parent[v].is_none()).collect();
        let height = depth.into_iter().max().unwrap_or(0);
        Ok(EliminationForest {
            parent,
            roots,
            height,
        })
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Depth of every vertex; roots have depth 1.
    pub fn depths(&self) -> Vec<usize> {
        let n = self.parent.len();
        let mut depth = vec![0usize; n];
        fn fill(v: usize, parent: &[Option<usize>], depth: &mut [usize]) -> usize {
            if depth[v] == 0 {
                depth[v] = match parent[v] {
                    None => 1,
                    Some(p) => fill(p, parent, depth) + 1,
                };
            }
            depth[v]
        }
        for v in 0..n {
            fill(v, &self.parent, &mut depth);
        }
        depth
    }

    /// Checks the stored roots and height against the parent array.
    pub fn is_consistent(&self) -> bool {
        match EliminationForest::from_parents(self.parent.clone()) {
            Ok(f) => f == *self,
            Err(_) => false,
        }
    }

    pub fn is_ancestor(&self, anc: usize, mut v: usize) -> bool {
        loop {
            if v == anc {
                return true;
            }
            match self.parent[v] {
                Some(p) => v = p,
                None => return false,
            }
        }
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.parent.len()];
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                ch[*p].push(v);
            }
        }
        ch
    }
}

/// Exact tree-depth value with a witness of that height.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Treedepth {
    pub value: usize,
    pub witness: EliminationForest,
}

fn ceil_log2(x: usize) -> usize {
    (usize::BITS - x.saturating_sub(1).leading_zeros()) as usize
}

pub fn treedepth_exact(g: &Graph) -> Result<Treedepth> {
    treedepth_exact_with_limit(g, DEFAULT_EXACT_LIMIT)
}

/// Minimum height of an elimination forest, by the deletion recursion
/// memoized over connected vertex subsets. Among minimizing deletion
/// vertices the smallest id becomes the root.
pub fn treedepth_exact_with_limit(g: &Graph, limit: usize) -> Result<Treedepth> {
    if g.n() > limit || g.n() > 64 {
        return Err(Error::SizeLimit {
            what: "exact tree-depth",
            size: g.n(),
            limit: limit.min(64),
        });
    }
    let adj = g.neighbor_masks()?;
    let mut solver = ExactSolver {
        adj: &adj,
        memo: HashMap::new(),
    };
    let mut parent = vec![None; g.n()];
    let mut value = 0;
    for comp in bits::components(&adj, bits::full(g.n())) {
        value = value.max(solver.solve(comp) as usize);
        solver.build(comp, None, &mut parent);
    }
    let witness = EliminationForest::from_parents(parent)?;
    debug_assert_eq!(witness.height, value);
    Ok(Treedepth { value, witness })
}

struct ExactSolver<'a> {
    adj: &'a [u64],
    /// connected set -> (tree-depth, root)
    memo: HashMap<u64, (u8, u8)>,
}

impl ExactSolver<'_> {
    fn solve(&mut self, set: u64) -> u8 {
        if set.count_ones() == 1 {
            return 1;
        }
        if let Some(&(td, _)) = self.memo.get(&set) {
            return td;
        }
        let (upper, _) = dfs_height_mask(self.adj, set);
        let lower = self.lower_bound(set);
        let mut best = upper as u8 + 1;
        let mut best_root = u8::MAX;
        for v in members(set) {
            let rest = set & !bit(v);
            let comps = bits::components(self.adj, rest);
            if comps.iter().any(|&c| 1 + self.lower_bound(c) >= best as usize) {
                continue;
            }
            let mut worst = 0u8;
            for c in comps {
                worst = worst.max(self.solve(c));
                if worst + 1 >= best {
                    break;
                }
            }
            if worst + 1 < best {
                best = worst + 1;
                best_root = v as u8;
                if best as usize == lower {
                    break;
                }
            }
        }
        debug_assert!(best_root != u8::MAX);
        self.memo.insert(set, (best, best_root));
        best
    }

    /// Valid lower bounds for a connected set: a path on `h` vertices forces
    /// ⌈log2(h+1)⌉, and tree-depth exceeds the degeneracy.
    fn lower_bound(&self, set: u64) -> usize {
        let size = set.count_ones() as usize;
        if size <= 1 {
            return size;
        }
        let (h, _) = dfs_height_mask(self.adj, set);
        let mut rest = set;
        let mut degen = 0;
        while rest != 0 {
            let (v, d) = members(rest)
                .map(|v| (v, (self.adj[v] & rest).count_ones() as usize))
                .min_by_key(|&(_, d)| d)
                .expect("non-empty");
            degen = degen.max(d);
            rest &= !bit(v);
        }
        ceil_log2(h + 1).max(degen + 1).max(2)
    }

    fn build(&mut self, set: u64, above: Option<usize>, parent: &mut [Option<usize>]) {
        if set.count_ones() == 1 {
            parent[set.trailing_zeros() as usize] = above;
            return;
        }
        self.solve(set);
        let root = self.memo[&set].1 as usize;
        parent[root] = above;
        for c in bits::components(self.adj, set & !bit(root)) {
            self.build(c, Some(root), parent);
        }
    }
}

/// DFS inside `set` from its smallest vertex, neighbors in increasing order.
/// Returns the tree height and the deepest root-to-leaf path.
fn dfs_height_mask(adj: &[u64], set: u64) -> (usize, Vec<usize>) {
    let start = set.trailing_zeros() as usize;
    let mut seen = bit(start);
    let mut stack = vec![start];
    let mut best_path = vec![start];
    while let Some(&top) = stack.last() {
        let next = adj[top] & set & !seen;
        if next == 0 {
            stack.pop();
            continue;
        }
        let v = next.trailing_zeros() as usize;
        seen |= bit(v);
        stack.push(v);
        if stack.len() > best_path.len() {
            best_path = stack.clone();
        }
    }
    (best_path.len(), best_path)
}

/// True iff every edge of `g` joins an ancestor–descendant pair of `f`.
/// Structurally broken forests (cycles, stale roots or height) verify false.
pub fn verify_elimination_forest(g: &Graph, f: &EliminationForest) -> Result<bool> {
    if f.parent.len() != g.n() {
        return Err(Error::InvalidArgument(format!(
            "forest has {} vertices, graph has {}",
            f.parent.len(),
            g.n()
        )));
    }
    if !f.is_consistent() {
        return Ok(false);
    }
    let depth = f.depths();
    Ok(g.edges().all(|(u, v)| {
        let (hi, lo) = if depth[u] < depth[v] { (u, v) } else { (v, u) };
        f.is_ancestor(hi, lo)
    }))
}

/// Colors each vertex by its depth (roots get color 0).
pub fn centered_coloring_from_forest(f: &EliminationForest) -> Coloring {
    let colors = f.depths().into_iter().map(|d| d - 1).collect();
    Coloring {
        colors,
        palette: f.height,
    }
}

pub fn verify_centered_coloring(g: &Graph, c: &Coloring) -> Result<bool> {
    verify_centered_coloring_with_limit(g, c, DEFAULT_BRUTE_FORCE_LIMIT)
}

/// Every connected induced subgraph must contain a color occurring exactly
/// once. Enumerates all vertex subsets.
pub fn verify_centered_coloring_with_limit(g: &Graph, c: &Coloring, limit: usize) -> Result<bool> {
    c.check_total(g)?;
    if g.n() > limit || g.n() > 30 {
        return Err(Error::SizeLimit {
            what: "centered-coloring check",
            size: g.n(),
            limit: limit.min(30),
        });
    }
    let adj = g.neighbor_masks()?;
    let mut counts = vec![0usize; c.palette];
    for set in 1..bits::full(g.n()) + 1 {
        if !bits::is_connected(&adj, set) {
            continue;
        }
        counts.iter_mut().for_each(|x| *x = 0);
        for v in members(set) {
            counts[c.colors[v]] += 1;
        }
        if !counts.contains(&1) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn verify_vertex_ranking(g: &Graph, c: &Coloring) -> Result<bool> {
    verify_vertex_ranking_with_limit(g, c, DEFAULT_BRUTE_FORCE_LIMIT)
}

/// Vertex-ranking check in its component form: for each color `k`, after
/// deleting every vertex colored above `k`, no component holds two vertices
/// of color `k`.
pub fn verify_vertex_ranking_with_limit(g: &Graph, c: &Coloring, limit: usize) -> Result<bool> {
    c.check_total(g)?;
    if g.n() > limit {
        return Err(Error::SizeLimit {
            what: "vertex-ranking check",
            size: g.n(),
            limit,
        });
    }
    for k in 0..c.palette {
        let keep: Vec<usize> = g.vertices().filter(|&v| c.colors[v] <= k).collect();
        let (sub, back) = g.induced_subgraph(&keep)?;
        for comp in connected_components(&sub) {
            if comp.iter().filter(|&&v| c.colors[back[v]] == k).count() > 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// DFS bounds on tree-depth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DfsBounds {
    /// ⌈log2(h+2)⌉ for the DFS height `h`; informational only, it can exceed
    /// the tree-depth when the DFS tree is not of minimum height.
    pub log_lower: usize,
    /// ⌈log2(h+1)⌉: the deepest DFS branch is a path on `h` vertices.
    pub path_lower: usize,
    /// The DFS height `h`; the DFS forest witnesses tree-depth ≤ h.
    pub upper: usize,
    pub witness: EliminationForest,
}

/// DFS from the smallest id of each component, neighbors in increasing
/// order. Non-tree edges of a DFS forest are back edges, so the forest is an
/// elimination forest.
pub fn dfs_height_bounds(g: &Graph) -> DfsBounds {
    let n = g.n();
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    for s in g.vertices() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![(s, 0usize)];
        while let Some(&mut (u, ref mut next)) = stack.last_mut() {
            let ns = g.neighbors(u);
            while *next < ns.len() && seen[ns[*next]] {
                *next += 1;
            }
            if *next == ns.len() {
                stack.pop();
                continue;
            }
            let v = ns[*next];
            seen[v] = true;
            parent[v] = Some(u);
            stack.push((v, 0));
        }
    }
    let witness = EliminationForest::from_parents(parent).expect("dfs forest is acyclic");
    let h = witness.height;
    DfsBounds {
        log_lower: ceil_log2(h + 2),
        path_lower: ceil_log2(h + 1),
        upper: h,
        witness,
    }
}

/// Decides `td(g) ≤ k` for graphs of any order, returning a witness forest
/// of height at most `k` when one exists. Designed for small `k`: a
/// connected graph with a path on `2^(k-1)` vertices must place a vertex of
/// that path at the root, which keeps the branching bounded.
pub fn elimination_forest_within(g: &Graph, k: usize, budget: u64) -> Result<Option<EliminationForest>> {
    let mut search = BoundedSearch {
        g,
        memo: HashMap::new(),
        steps: 0,
        budget,
    };
    let mut parent = vec![None; g.n()];
    for comp in connected_components(g) {
        if !search.within(&comp, k)? {
            return Ok(None);
        }
        search.build(&comp, k, None, &mut parent)?;
    }
    let f = EliminationForest::from_parents(parent)?;
    debug_assert!(f.height <= k.max(0));
    Ok(Some(f))
}

/// Exact tree-depth by increasing `k` in [`elimination_forest_within`].
/// Useful when the graph is large but its tree-depth is small.
pub fn treedepth_bounded_search(g: &Graph, max_k: usize, budget: u64) -> Result<Option<Treedepth>> {
    let start = if g.n() == 0 { 0 } else { 1 };
    for k in start..=max_k {
        if let Some(witness) = elimination_forest_within(g, k, budget)? {
            return Ok(Some(Treedepth {
                value: witness.height,
                witness,
            }));
        }
    }
    Ok(None)
}

/// Root-to-leaf path of maximum depth in a DFS tree of the component of
/// `start`, neighbors visited in ascending order.
fn deepest_dfs_path(g: &Graph, start: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; g.n()];
    let mut depth = vec![0usize; g.n()];
    let mut seen = vec![false; g.n()];
    let mut stack = vec![(start, 0usize)];
    seen[start] = true;
    depth[start] = 1;
    let mut deepest = start;
    while let Some(&mut (v, ref mut next)) = stack.last_mut() {
        let nbrs = g.neighbors(v);
        if let Some(&w) = nbrs[*next..].iter().find(|&&w| !seen[w]) {
            *next = nbrs.iter().position(|&x| x == w).expect("present") + 1;
            seen[w] = true;
            parent[w] = v;
            depth[w] = depth[v] + 1;
            if depth[w] > depth[deepest] {
                deepest = w;
            }
            stack.push((w, 0));
        } else {
            stack.pop();
        }
    }
    let mut path = vec![deepest];
    while parent[*path.last().expect("non-empty")] != usize::MAX {
        path.push(parent[*path.last().expect("non-empty")]);
    }
    path.reverse();
    path
}

struct BoundedSearch<'a> {
    g: &'a Graph,
    /// (sorted connected vertex set, k) -> outcome
    memo: HashMap<(Vec<usize>, usize), Outcome>,
    steps: u64,
    budget: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Outcome {
    No,
    /// a chain or DFS witness applies directly
    Direct,
    Root(usize),
}

enum Shortcut {
    Yes(Vec<Option<usize>>),
    No,
    Branch(Vec<usize>),
}

impl BoundedSearch<'_> {
    fn components_without(&self, set: &[usize], removed: usize) -> Vec<Vec<usize>> {
        let rest: Vec<usize> = set.iter().copied().filter(|&v| v != removed).collect();
        let (sub, back) = self.g.induced_subgraph(&rest).expect("in range");
        connected_components(&sub)
            .into_iter()
            .map(|c| c.into_iter().map(|v| back[v]).collect())
            .collect()
    }

    /// Cheap answers for a connected `set`; otherwise the root candidates.
    fn shortcut(&self, set: &[usize], k: usize) -> Shortcut {
        if set.len() <= k {
            // a chain in id order
            let mut parent = vec![None; set.len()];
            for i in 1..set.len() {
                parent[i] = Some(i - 1);
            }
            return Shortcut::Yes(parent);
        }
        if k <= 1 {
            return Shortcut::No;
        }
        let (sub, _) = self.g.induced_subgraph(set).expect("in range");
        let dfs = dfs_height_bounds(&sub);
        if dfs.upper <= k {
            return Shortcut::Yes(dfs.witness.parent);
        }
        if dfs.path_lower > k {
            return Shortcut::No;
        }
        if degeneracy(&sub).degeneracy + 1 > k {
            return Shortcut::No;
        }
        // the root meets every path on `must_hit` vertices, since such a
        // path alone has tree-depth k
        let must_hit = 1usize << (k - 1);
        let mut candidates: Option<Vec<usize>> = None;
        let mut start = 0;
        for _ in 0..3 {
            let path = deepest_dfs_path(&sub, start);
            let end = *path.last().expect("non-empty");
            if path.len() >= must_hit {
                let mut hit: Vec<usize> = path.iter().map(|&i| set[i]).collect();
                hit.sort_unstable();
                candidates = Some(match candidates {
                    None => hit,
                    Some(c) => c.into_iter().filter(|v| hit.binary_search(v).is_ok()).collect(),
                });
            }
            if end == start {
                break;
            }
            start = end;
        }
        match candidates {
            Some(c) if c.is_empty() => Shortcut::No,
            Some(c) => Shortcut::Branch(c),
            None => Shortcut::Branch(set.to_vec()),
        }
    }

    fn within(&mut self, set: &[usize], k: usize) -> Result<bool> {
        Ok(self.decide(set, k)? != Outcome::No)
    }

    fn decide(&mut self, set: &[usize], k: usize) -> Result<Outcome> {
        let key = (set.to_vec(), k);
        if let Some(&r) = self.memo.get(&key) {
            return Ok(r);
        }
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::BudgetExceeded {
                what: "bounded tree-depth search",
                budget: self.budget,
            });
        }
        let result = match self.shortcut(set, k) {
            Shortcut::Yes(_) => Outcome::Direct,
            Shortcut::No => Outcome::No,
            Shortcut::Branch(candidates) => {
                let mut found = Outcome::No;
                'outer: for v in candidates {
                    for comp in self.components_without(set, v) {
                        if !self.within(&comp, k - 1)? {
                            continue 'outer;
                        }
                    }
                    found = Outcome::Root(v);
                    break;
                }
                found
            }
        };
        self.memo.insert(key, result);
        Ok(result)
    }

    fn build(&mut self, set: &[usize], k: usize, above: Option<usize>, parent: &mut [Option<usize>]) -> Result<()> {
        if let Shortcut::Yes(local) = self.shortcut(set, k) {
            for (i, p) in local.into_iter().enumerate() {
                parent[set[i]] = p.map(|j| set[j]).or(above);
            }
            return Ok(());
        }
        let Outcome::Root(root) = self.decide(set, k)? else {
            unreachable!("build only after success")
        };
        parent[root] = above;
        for comp in self.components_without(set, root) {
            self.build(&comp, k - 1, Some(root), parent)?;
        }
        Ok(())
    }
}
