//! Low tree-depth decompositions: colorings in which any `i ≤ p` color
//! classes induce a subgraph of tree-depth at most `i`.
//!
//! Colorings are built from transitive fraternal augmentations of a
//! degeneracy orientation and are always checked before being reported as
//! verified.

use std::collections::HashMap;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::orientation::{degeneracy_orientation, ArcInfo, ArcKind, Orientation};
use crate::traversal::{connected_components, degeneracy, smallest_last_coloring};
use crate::treedepth::{elimination_forest_within, treedepth_exact, DEFAULT_BOUNDED_BUDGET};
use crate::verdict::Verdict;

pub const DEFAULT_ROUND_CAP: usize = 24;
pub const DEFAULT_CHI_P_LIMIT: usize = 8;

/// Runs `rounds` rounds of transitive fraternal augmentation.
///
/// In each round, computed against the arcs present at its start:
/// - `x → u → v` adds the arc `x → v` (transitive);
/// - `u → v ← w` adds the edge `{u, w}` (fraternal), unless the pair is
///   already joined.
///
/// Fraternal edges are oriented along a smallest-last ordering of the graph
/// they form, from the later-removed endpoint to the earlier one, which keeps
/// the in-degree they add at most that graph's degeneracy. A round that adds
/// nothing is a fixpoint and later rounds change nothing.
pub fn tf_augment(o: &Orientation, rounds: usize) -> Result<Orientation> {
    tf_augment_with_cap(o, rounds, DEFAULT_ROUND_CAP)
}

pub fn tf_augment_with_cap(o: &Orientation, rounds: usize, cap: usize) -> Result<Orientation> {
    if rounds > cap {
        return Err(Error::InvalidArgument(format!(
            "{rounds} augmentation rounds exceed the cap of {cap}"
        )));
    }
    let mut cur = o.clone();
    let start = cur.arcs().iter().map(|(_, _, i)| i.round).max().unwrap_or(0);
    for r in 1..=rounds {
        if !augment_round(&mut cur, start + r) {
            break;
        }
    }
    Ok(cur)
}

/// One augmentation round; returns whether anything was added.
fn augment_round(o: &mut Orientation, round: usize) -> bool {
    let n = o.n();
    let mut transitive = Vec::new();
    let mut fraternal = Vec::new();
    for v in 0..n {
        let ins: Vec<usize> = o.in_neighbors(v).collect();
        for &u in &ins {
            for x in o.in_neighbors(u) {
                if x != v && !o.adjacent(x, v) {
                    transitive.push((x, v));
                }
            }
        }
        for (i, &u) in ins.iter().enumerate() {
            for &w in &ins[i + 1..] {
                if !o.adjacent(u, w) {
                    fraternal.push((u.min(w), u.max(w)));
                }
            }
        }
    }
    transitive.sort_unstable();
    transitive.dedup();
    let mut added = false;
    let info = |kind| ArcInfo { kind, round };
    for &(x, v) in &transitive {
        added |= o.insert(x, v, info(ArcKind::Transitive));
    }
    fraternal.sort_unstable();
    fraternal.dedup();
    fraternal.retain(|&(u, w)| !o.adjacent(u, w));
    if !fraternal.is_empty() {
        let f = Graph::from_edges(n, fraternal.iter().copied()).expect("fraternal pairs are simple");
        let order = degeneracy(&f).removal_order;
        let mut position = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        for &(u, w) in &fraternal {
            let (tail, head) = if position[u] > position[w] { (u, w) } else { (w, u) };
            added |= o.insert(tail, head, info(ArcKind::Fraternal));
        }
    }
    added
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LtdMethod {
    Augmentation,
    ExactSearch,
}

/// A low tree-depth coloring with parameter `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LtdDecomposition {
    pub coloring: Coloring,
    pub p: usize,
    pub rounds_used: usize,
    pub verified: bool,
    pub method: LtdMethod,
}

#[derive(Clone, Debug)]
pub struct LtdConfig {
    /// Initial augmentation rounds; `None` means `2p - 2`.
    pub rounds: Option<usize>,
    /// Last round count tried before giving up on augmentation.
    pub round_cap: usize,
    /// Graphs up to this order fall back to the exact optimum.
    pub exact_fallback_limit: usize,
    /// Step budget per color subset during verification.
    pub verify_budget: u64,
}

impl Default for LtdConfig {
    fn default() -> Self {
        LtdConfig {
            rounds: None,
            round_cap: DEFAULT_ROUND_CAP,
            exact_fallback_limit: DEFAULT_CHI_P_LIMIT,
            verify_budget: DEFAULT_BOUNDED_BUDGET,
        }
    }
}

pub fn ltd_coloring(g: &Graph, p: usize) -> Result<LtdDecomposition> {
    ltd_coloring_with(g, p, &LtdConfig::default())
}

/// Colors the augmentation after `r = 0, 1, ...` rounds and returns the
/// first coloring that verifies. Palettes grow quickly with `r`, so the
/// scan stops early; rounds past the planned `R` are the escalation.
pub fn ltd_coloring_with(g: &Graph, p: usize, cfg: &LtdConfig) -> Result<LtdDecomposition> {
    if p == 0 {
        return Err(Error::InvalidArgument("p must be at least 1".into()));
    }
    let planned = cfg.rounds.unwrap_or(2 * p - 2);
    if planned > cfg.round_cap {
        return Err(Error::InvalidArgument(format!(
            "{planned} augmentation rounds exceed the cap of {}",
            cfg.round_cap
        )));
    }
    let mut o = degeneracy_orientation(g);
    let mut rounds = 0;
    let last_failure;
    loop {
        let coloring = Coloring::new(smallest_last_coloring(&o.underlying_graph()));
        let failure = match verify_ltd_with_budget(g, p, &coloring, cfg.verify_budget)? {
            Verdict::Holds => {
                return Ok(LtdDecomposition {
                    coloring,
                    p,
                    rounds_used: rounds,
                    verified: true,
                    method: LtdMethod::Augmentation,
                });
            }
            Verdict::Violated(set) => format!("color set {set:?} violates"),
            Verdict::Indeterminate(msg) => msg,
        };
        if rounds >= cfg.round_cap {
            last_failure = failure;
            break;
        }
        rounds += 1;
        if !augment_round(&mut o, rounds) {
            last_failure = format!("augmentation reached a fixpoint after {} rounds; {failure}", rounds - 1);
            break;
        }
    }
    if g.n() <= cfg.exact_fallback_limit {
        let (_, coloring) = chi_p_bruteforce_with_limit(g, p, cfg.exact_fallback_limit)?;
        return Ok(LtdDecomposition {
            coloring,
            p,
            rounds_used: rounds,
            verified: true,
            method: LtdMethod::ExactSearch,
        });
    }
    Err(Error::Verification(format!(
        "no low tree-depth coloring with p = {p} after {rounds} rounds: {last_failure}"
    )))
}

pub fn verify_ltd(g: &Graph, p: usize, c: &Coloring) -> Result<Verdict<Vec<usize>>> {
    verify_ltd_with_budget(g, p, c, DEFAULT_BOUNDED_BUDGET)
}

/// Checks `td(G[I]) ≤ |I|` for every set `I` of at most `p` used colors.
/// Branches by smallest color run in parallel; the reported violation is
/// the lexicographically smallest violating color set.
pub fn verify_ltd_with_budget(g: &Graph, p: usize, c: &Coloring, budget: u64) -> Result<Verdict<Vec<usize>>> {
    c.check_total(g)?;
    let used = used_colors(c);
    let mut class_size = vec![0usize; c.palette];
    for &col in &c.colors {
        class_size[col] += 1;
    }
    let scan = SubsetScan {
        g,
        c,
        p,
        budget,
        used: &used,
        class_size: &class_size,
        undecided: Mutex::new(None),
    };
    let found = (0..used.len())
        .into_par_iter()
        .find_map_first(|i| scan.branch(&mut vec![used[i]], i).err());
    match found {
        Some(Stop::Violation(set)) => return Ok(Verdict::Violated(set)),
        Some(Stop::Failed(e)) => return Err(e),
        None => {}
    }
    Ok(match scan.undecided.into_inner().expect("not poisoned") {
        Some(set) => Verdict::Indeterminate(format!("budget exhausted on color set {set:?}")),
        None => Verdict::Holds,
    })
}

enum Stop {
    Violation(Vec<usize>),
    Failed(Error),
}

struct SubsetScan<'a> {
    g: &'a Graph,
    c: &'a Coloring,
    p: usize,
    budget: u64,
    used: &'a [usize],
    class_size: &'a [usize],
    /// lexicographically smallest undecided set
    undecided: Mutex<Option<Vec<usize>>>,
}

impl SubsetScan<'_> {
    /// Depth-first over extensions of `set` (last color at `used[last]`),
    /// in lexicographic order.
    fn branch(&self, set: &mut Vec<usize>, last: usize) -> std::result::Result<(), Stop> {
        let size: usize = set.iter().map(|&col| self.class_size[col]).sum();
        // at most |I| vertices always fit in a chain
        if size > set.len() {
            match subset_within(self.g, self.c, set, self.budget) {
                Ok(Some(true)) => {}
                Ok(Some(false)) => return Err(Stop::Violation(set.clone())),
                Ok(None) => {
                    let mut u = self.undecided.lock().expect("not poisoned");
                    if u.as_ref().is_none_or(|s| *set < *s) {
                        *u = Some(set.clone());
                    }
                }
                Err(e) => return Err(Stop::Failed(e)),
            }
        }
        if set.len() < self.p {
            for j in last + 1..self.used.len() {
                set.push(self.used[j]);
                let r = self.branch(set, j);
                set.pop();
                r?;
            }
        }
        Ok(())
    }
}

fn used_colors(c: &Coloring) -> Vec<usize> {
    let mut used = c.colors.clone();
    used.sort_unstable();
    used.dedup();
    used
}

/// All non-empty subsets of `colors` with at most `p` elements, in
/// lexicographic order.
pub fn color_subsets(colors: &[usize], p: usize) -> Vec<Vec<usize>> {
    fn rec(colors: &[usize], from: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for i in from..colors.len() {
            cur.push(colors[i]);
            out.push(cur.clone());
            if cur.len() < p {
                rec(colors, i + 1, p, cur, out);
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if p > 0 {
        rec(colors, 0, p, &mut Vec::new(), &mut out);
    }
    out
}

/// `Some(td(G[set]) ≤ |set|)`, or `None` when the budget runs out.
fn subset_within(g: &Graph, c: &Coloring, set: &[usize], budget: u64) -> Result<Option<bool>> {
    let (sub, _) = g.induced_subgraph(&c.vertices_with_colors(set))?;
    match elimination_forest_within(&sub, set.len(), budget) {
        Ok(f) => Ok(Some(f.is_some())),
        Err(Error::BudgetExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn chi_p_bruteforce(g: &Graph, p: usize) -> Result<(usize, Coloring)> {
    chi_p_bruteforce_with_limit(g, p, DEFAULT_CHI_P_LIMIT)
}

/// Exact `χ_p` by enumerating colorings up to renaming of colors
/// (restricted growth strings), smallest palette first. Color-subset
/// tree-depths come from the exact memoized solver.
pub fn chi_p_bruteforce_with_limit(g: &Graph, p: usize, limit: usize) -> Result<(usize, Coloring)> {
    if g.n() > limit {
        return Err(Error::SizeLimit {
            what: "chi_p brute force",
            size: g.n(),
            limit,
        });
    }
    if p == 0 {
        return Err(Error::InvalidArgument("p must be at least 1".into()));
    }
    if g.n() == 0 {
        return Ok((0, Coloring::new(Vec::new())));
    }
    let mut cache: HashMap<Vec<usize>, usize> = HashMap::new();
    for k in 1..=g.n() {
        let mut colors = vec![0usize; g.n()];
        if let Some(c) = search_palette(g, p, k, 0, 0, &mut colors, &mut cache)? {
            return Ok((k, c));
        }
    }
    unreachable!("n distinct colors always work")
}

fn search_palette(
    g: &Graph,
    p: usize,
    k: usize,
    v: usize,
    used: usize,
    colors: &mut Vec<usize>,
    cache: &mut HashMap<Vec<usize>, usize>,
) -> Result<Option<Coloring>> {
    if v == g.n() {
        let c = Coloring::with_palette(colors.clone(), k)?;
        return Ok(ltd_holds_exact(g, p, &c, cache)?.then_some(c));
    }
    for color in 0..k.min(used + 1) {
        // p ≥ 1 forces properness
        if g.neighbors(v).iter().any(|&w| w < v && colors[w] == color) {
            continue;
        }
        colors[v] = color;
        if let Some(c) = search_palette(g, p, k, v + 1, used.max(color + 1), colors, cache)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

fn ltd_holds_exact(g: &Graph, p: usize, c: &Coloring, cache: &mut HashMap<Vec<usize>, usize>) -> Result<bool> {
    for set in color_subsets(&used_colors(c), p) {
        let vs = c.vertices_with_colors(&set);
        let td = match cache.get(&vs) {
            Some(&td) => td,
            None => {
                let (sub, _) = g.induced_subgraph(&vs)?;
                let td = treedepth_exact(&sub)?.value;
                cache.insert(vs, td);
                td
            }
        };
        if td > set.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Clusters from a low tree-depth coloring with parameter `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClusterCover {
    pub clusters: Vec<Vec<usize>>,
    pub t: usize,
    /// Palette of the underlying coloring.
    pub palette: usize,
    /// Number of clusters containing each vertex.
    pub membership: Vec<usize>,
}

impl ClusterCover {
    pub fn max_membership(&self) -> usize {
        self.membership.iter().copied().max().unwrap_or(0)
    }

    /// `C(palette, min(t, palette))`: the number of color sets clusters are
    /// drawn from, hence a bound on per-vertex membership.
    pub fn membership_bound(&self) -> usize {
        binomial(self.palette, self.t.min(self.palette))
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

pub fn cluster_cover(g: &Graph, t: usize) -> Result<ClusterCover> {
    let ltd = ltd_coloring(g, t)?;
    Ok(cluster_cover_from(g, t, &ltd.coloring))
}

/// Components of every subgraph induced by `min(t, used)` colors, keeping
/// only clusters not strictly contained in another.
pub fn cluster_cover_from(g: &Graph, t: usize, c: &Coloring) -> ClusterCover {
    let used = used_colors(c);
    let size = t.min(used.len());
    let mut clusters: Vec<Vec<usize>> = color_subsets(&used, size)
        .into_iter()
        .filter(|s| s.len() == size)
        .flat_map(|set| {
            let (sub, back) = g.induced_subgraph(&c.vertices_with_colors(&set)).expect("in range");
            connected_components(&sub)
                .into_iter()
                .map(|comp| comp.into_iter().map(|v| back[v]).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        })
        .collect();
    clusters.sort();
    clusters.dedup();
    let mut by_vertex: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, cl) in clusters.iter().enumerate() {
        for &v in cl {
            by_vertex[v].push(i);
        }
    }
    let contained = |i: usize| {
        let cl = &clusters[i];
        by_vertex[cl[0]].iter().any(|&j| {
            j != i && clusters[j].len() > cl.len() && cl.iter().all(|v| clusters[j].binary_search(v).is_ok())
        })
    };
    let keep: Vec<bool> = (0..clusters.len()).map(|i| !contained(i)).collect();
    let clusters: Vec<Vec<usize>> = clusters
        .into_iter()
        .zip(keep)
        .filter_map(|(cl, k)| k.then_some(cl))
        .collect();
    let mut membership = vec![0; g.n()];
    for cl in &clusters {
        for &v in cl {
            membership[v] += 1;
        }
    }
    ClusterCover {
        clusters,
        t,
        palette: c.palette,
        membership,
    }
}

/// First violated property of a cluster cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClusterViolation {
    Malformed { cluster: usize },
    Disconnected { cluster: usize },
    TooDeep { cluster: usize },
    MembershipMismatch { vertex: usize, recorded: usize, actual: usize },
    MembershipBound { vertex: usize, count: usize, bound: usize },
    Uncovered { vertices: Vec<usize> },
}

pub const DEFAULT_ENUMERATION_BUDGET: u64 = 20_000_000;

pub fn verify_cluster_cover(g: &Graph, cov: &ClusterCover) -> Result<Verdict<ClusterViolation>> {
    verify_cluster_cover_with_budget(g, cov, DEFAULT_ENUMERATION_BUDGET)
}

/// Checks that each cluster is connected with tree-depth at most `t`, that
/// memberships match and respect the `C(palette, t)` bound, and that every
/// connected vertex set of order at most `t` lies in some cluster.
pub fn verify_cluster_cover_with_budget(
    g: &Graph,
    cov: &ClusterCover,
    budget: u64,
) -> Result<Verdict<ClusterViolation>> {
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, cl) in cov.clusters.iter().enumerate() {
        let mut sorted = cl.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if cl.is_empty() || sorted.len() != cl.len() || cl.iter().any(|&v| v >= g.n()) {
            return Ok(Verdict::Violated(ClusterViolation::Malformed { cluster: i }));
        }
        let (sub, _) = g.induced_subgraph(cl)?;
        if connected_components(&sub).len() != 1 {
            return Ok(Verdict::Violated(ClusterViolation::Disconnected { cluster: i }));
        }
        match elimination_forest_within(&sub, cov.t, DEFAULT_BOUNDED_BUDGET) {
            Ok(Some(_)) => {}
            Ok(None) => return Ok(Verdict::Violated(ClusterViolation::TooDeep { cluster: i })),
            Err(Error::BudgetExceeded { .. }) => {
                return Ok(Verdict::Indeterminate(format!("tree-depth of cluster {i} undecided")))
            }
            Err(e) => return Err(e),
        }
        for &v in cl {
            members[v].push(i);
        }
    }
    let bound = cov.membership_bound();
    for v in g.vertices() {
        let actual = members[v].len();
        let recorded = cov.membership.get(v).copied().unwrap_or(usize::MAX);
        if recorded != actual {
            return Ok(Verdict::Violated(ClusterViolation::MembershipMismatch {
                vertex: v,
                recorded,
                actual,
            }));
        }
        if actual > bound {
            return Ok(Verdict::Violated(ClusterViolation::MembershipBound {
                vertex: v,
                count: actual,
                bound,
            }));
        }
    }
    let sorted: Vec<Vec<usize>> = cov
        .clusters
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.sort_unstable();
            c
        })
        .collect();
    let mut uncovered = None;
    let complete = for_each_connected_set(g, cov.t, budget, |set| {
        let covered = members[set[0]]
            .iter()
            .any(|&i| set.iter().all(|v| sorted[i].binary_search(v).is_ok()));
        if !covered {
            let mut s = set.to_vec();
            s.sort_unstable();
            uncovered = Some(s);
            return false;
        }
        true
    });
    if let Some(vertices) = uncovered {
        return Ok(Verdict::Violated(ClusterViolation::Uncovered { vertices }));
    }
    if !complete {
        return Ok(Verdict::Indeterminate(format!(
            "connected-subgraph enumeration exceeded {budget} sets"
        )));
    }
    Ok(Verdict::Holds)
}

/// Enumerates every connected vertex set of order `1..=k` exactly once
/// (extension-set enumeration rooted at the smallest member). `visit`
/// returns `false` to stop. Returns `false` if stopped or over budget.
pub fn for_each_connected_set<F>(g: &Graph, k: usize, budget: u64, visit: F) -> bool
where
    F: FnMut(&[usize]) -> bool,
{
    struct Ctx<'a, F> {
        g: &'a Graph,
        k: usize,
        budget: u64,
        seen: u64,
        visit: F,
        in_set: Vec<bool>,
        near: Vec<usize>,
    }
    fn extend<F: FnMut(&[usize]) -> bool>(ctx: &mut Ctx<'_, F>, set: &mut Vec<usize>, mut ext: Vec<usize>, root: usize) -> bool {
        ctx.seen += 1;
        if ctx.seen > ctx.budget || !(ctx.visit)(set) {
            return false;
        }
        if set.len() == ctx.k {
            return true;
        }
        while let Some(w) = ext.pop() {
            let mut next = ext.clone();
            // exclusive neighbors of w: beyond the root, outside the set and
            // its current neighborhood
            for &u in ctx.g.neighbors(w) {
                if u > root && !ctx.in_set[u] && ctx.near[u] == 0 && !next.contains(&u) {
                    next.push(u);
                }
            }
            set.push(w);
            ctx.in_set[w] = true;
            for &u in ctx.g.neighbors(w) {
                ctx.near[u] += 1;
            }
            let ok = extend(ctx, set, next, root);
            for &u in ctx.g.neighbors(w) {
                ctx.near[u] -= 1;
            }
            ctx.in_set[w] = false;
            set.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    let mut ctx = Ctx {
        g,
        k,
        budget,
        seen: 0,
        visit,
        in_set: vec![false; g.n()],
        near: vec![0; g.n()],
    };
    if k == 0 {
        return true;
    }
    for v in g.vertices() {
        let ext: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| u > v).collect();
        ctx.in_set[v] = true;
        for &u in g.neighbors(v) {
            ctx.near[u] += 1;
        }
        let ok = extend(&mut ctx, &mut vec![v], ext, v);
        for &u in g.neighbors(v) {
            ctx.near[u] -= 1;
        }
        ctx.in_set[v] = false;
        if !ok {
            return false;
        }
    }
    true
}
