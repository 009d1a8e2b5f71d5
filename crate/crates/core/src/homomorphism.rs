//! Graph homomorphisms: existence with witnesses, cores,
//! t-approximations and restricted-duality checks.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::{bit, full, members};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::traversal::is_connected;
use crate::verdict::Verdict;

pub const DEFAULT_HOM_BUDGET: u64 = 20_000_000;
pub const HOM_TARGET_LIMIT: usize = 32;
pub const HOM_SOURCE_LIMIT: usize = 200;
pub const CORE_LIMIT: usize = 12;

/// `map[v]` is the image of `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hom {
    pub map: Vec<usize>,
}

impl Hom {
    /// Every edge of `g` goes to an edge of `h`.
    pub fn validate(&self, g: &Graph, h: &Graph) -> bool {
        self.map.len() == g.n()
            && self.map.iter().all(|&x| x < h.n())
            && g.edges().all(|(u, v)| h.has_edge(self.map[u], self.map[v]))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Hom) -> Hom {
        Hom {
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "hom", rename_all = "lowercase")]
pub enum HomOutcome {
    Found(Hom),
    None,
    /// the search budget ran out before an answer
    Indeterminate,
}

/// Three-valued answer used in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Indeterminate,
}

impl HomOutcome {
    pub fn answer(&self) -> Answer {
        match self {
            HomOutcome::Found(_) => Answer::Yes,
            HomOutcome::None => Answer::No,
            HomOutcome::Indeterminate => Answer::Indeterminate,
        }
    }

    pub fn hom(&self) -> Option<&Hom> {
        match self {
            HomOutcome::Found(h) => Some(h),
            _ => None,
        }
    }
}

pub fn hom_exists(g: &Graph, h: &Graph) -> Result<HomOutcome> {
    hom_exists_with_budget(g, h, DEFAULT_HOM_BUDGET)
}

/// Backtracking over domains kept as bitmasks: the next vertex is the one
/// with the fewest candidates (ties to higher degree, then smaller id), and
/// each assignment filters its unassigned neighbors' domains.
pub fn hom_exists_with_budget(g: &Graph, h: &Graph, budget: u64) -> Result<HomOutcome> {
    if h.n() > HOM_TARGET_LIMIT {
        return Err(Error::SizeLimit {
            what: "homomorphism target",
            size: h.n(),
            limit: HOM_TARGET_LIMIT,
        });
    }
    if g.n() > HOM_SOURCE_LIMIT {
        return Err(Error::SizeLimit {
            what: "homomorphism source",
            size: g.n(),
            limit: HOM_SOURCE_LIMIT,
        });
    }
    let h_adj = h.neighbor_masks()?;
    let with_edges = h.vertices().filter(|&x| h.degree(x) > 0).fold(0, |m, x| m | bit(x));
    let domains: Vec<u64> = g
        .vertices()
        .map(|v| if g.degree(v) > 0 { with_edges } else { full(h.n()) })
        .collect();
    let mut search = HomSearch {
        g,
        h_adj: &h_adj,
        map: vec![usize::MAX; g.n()],
        steps: 0,
        budget,
    };
    Ok(match search.run(domains) {
        Some(true) => HomOutcome::Found(Hom { map: search.map }),
        Some(false) => HomOutcome::None,
        None => HomOutcome::Indeterminate,
    })
}

struct HomSearch<'a> {
    g: &'a Graph,
    h_adj: &'a [u64],
    map: Vec<usize>,
    steps: u64,
    budget: u64,
}

impl HomSearch<'_> {
    /// `Some(found)`, or `None` when over budget.
    fn run(&mut self, domains: Vec<u64>) -> Option<bool> {
        let next = self
            .g
            .vertices()
            .filter(|&v| self.map[v] == usize::MAX)
            .min_by_key(|&v| (domains[v].count_ones(), std::cmp::Reverse(self.g.degree(v)), v));
        let Some(v) = next else {
            return Some(true);
        };
        for x in members(domains[v]) {
            self.steps += 1;
            if self.steps > self.budget {
                return None;
            }
            let mut d = domains.clone();
            d[v] = bit(x);
            let consistent = self.g.neighbors(v).iter().all(|&w| {
                if self.map[w] != usize::MAX {
                    return self.h_adj[x] & bit(self.map[w]) != 0;
                }
                d[w] &= self.h_adj[x];
                d[w] != 0
            });
            if !consistent {
                continue;
            }
            self.map[v] = x;
            match self.run(d) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            self.map[v] = usize::MAX;
        }
        Some(false)
    }
}

/// The core of `g` as an induced subgraph, with a retraction onto it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Core {
    /// vertices of `g` spanning the core, ascending
    pub vertices: Vec<usize>,
    pub graph: Graph,
    /// `g → core` in core-local ids, identity on the core
    pub retraction: Hom,
}

pub fn core(g: &Graph) -> Result<Core> {
    core_with_budget(g, DEFAULT_HOM_BUDGET)
}

/// Shrinks `S` one vertex at a time while `G[S] → G[S − v]`. A graph that
/// is not a core maps to a proper subgraph, which misses some vertex, so
/// the loop stops exactly at a core.
pub fn core_with_budget(g: &Graph, budget: u64) -> Result<Core> {
    if g.n() > CORE_LIMIT {
        return Err(Error::SizeLimit {
            what: "core search",
            size: g.n(),
            limit: CORE_LIMIT,
        });
    }
    let mut keep: Vec<usize> = g.vertices().collect();
    // r: g → g[keep], as original vertex ids
    let mut r: Vec<usize> = g.vertices().collect();
    'shrink: loop {
        let (cur, _) = g.induced_subgraph(&keep)?;
        for i in 0..keep.len() {
            let rest: Vec<usize> = keep.iter().copied().filter(|&x| x != keep[i]).collect();
            let (smaller, back) = g.induced_subgraph(&rest)?;
            match hom_exists_with_budget(&cur, &smaller, budget)? {
                HomOutcome::Found(phi) => {
                    let pos = |v: usize| keep.binary_search(&v).expect("kept");
                    r = r.iter().map(|&v| back[phi.map[pos(v)]]).collect();
                    keep = rest;
                    continue 'shrink;
                }
                HomOutcome::None => {}
                HomOutcome::Indeterminate => {
                    return Err(Error::BudgetExceeded {
                        what: "core homomorphism search",
                        budget,
                    })
                }
            }
        }
        break;
    }
    let (graph, _) = g.induced_subgraph(&keep)?;
    let pos = |v: usize| keep.binary_search(&v).expect("kept");
    // r restricted to the core is an automorphism; undo it
    let mut inverse = vec![0; keep.len()];
    for (i, &v) in keep.iter().enumerate() {
        inverse[pos(r[v])] = i;
    }
    let retraction = Hom {
        map: r.iter().map(|&v| inverse[pos(v)]).collect(),
    };
    debug_assert!(retraction.validate(g, &graph));
    Ok(Core {
        vertices: keep,
        graph,
        retraction,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ApproximationViolation {
    /// `g ↛ h`
    NoHomomorphism,
    /// `h[vertices] ↛ g`
    Subgraph { vertices: Vec<usize> },
}

pub const APPROXIMATION_SUBSET_BUDGET: u64 = 1_000_000;

/// Is `h` a t-approximation of `g`: `g → h`, and every subgraph of `h` of
/// order at most `t` maps to `g`. Induced subgraphs on exactly
/// `min(t, |h|)` vertices suffice, since every smaller subgraph lies in
/// one of them.
pub fn t_approximation_check(g: &Graph, h: &Graph, t: usize) -> Result<Verdict<ApproximationViolation>> {
    match hom_exists(g, h)? {
        HomOutcome::None => return Ok(Verdict::Violated(ApproximationViolation::NoHomomorphism)),
        HomOutcome::Indeterminate => return Ok(Verdict::Indeterminate("g → h undecided".into())),
        HomOutcome::Found(_) => {}
    }
    let size = t.min(h.n());
    let mut undecided = None;
    let mut violation = None;
    let mut visited = 0u64;
    let mut check = |set: &[usize]| -> Result<bool> {
        visited += 1;
        if visited > APPROXIMATION_SUBSET_BUDGET {
            undecided.get_or_insert_with(|| "subset budget exhausted".to_string());
            return Ok(false);
        }
        let (sub, _) = h.induced_subgraph(set)?;
        match hom_exists(&sub, g)? {
            HomOutcome::Found(_) => Ok(true),
            HomOutcome::None => {
                violation = Some(set.to_vec());
                Ok(false)
            }
            HomOutcome::Indeterminate => {
                undecided.get_or_insert_with(|| format!("h{set:?} → g undecided"));
                Ok(true)
            }
        }
    };
    k_subsets(h.n(), size, &mut check)?;
    if let Some(vertices) = violation {
        return Ok(Verdict::Violated(ApproximationViolation::Subgraph { vertices }));
    }
    Ok(undecided.map_or(Verdict::Holds, Verdict::Indeterminate))
}

/// Lexicographic `k`-subsets of `0..n` until `visit` returns false.
fn k_subsets(n: usize, k: usize, visit: &mut dyn FnMut(&[usize]) -> Result<bool>) -> Result<()> {
    fn rec(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> Result<bool>) -> Result<bool> {
        if cur.len() == k {
            return visit(cur);
        }
        for v in from..=n - (k - cur.len()) {
            cur.push(v);
            let go = rec(n, k, v + 1, cur, visit)?;
            cur.pop();
            if !go {
                return Ok(false);
            }
        }
        Ok(true)
    }
    if k <= n {
        rec(n, k, 0, &mut Vec::new(), visit)?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualInstance {
    pub index: usize,
    /// `F → G`
    pub pattern_maps: Answer,
    /// `G → D`
    pub maps_to_dual: Answer,
    /// whether `F ↛ G ⇔ G → D` holds here
    pub status: Answer,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualReport {
    /// `F → D`; must be `no` for `D` to be a dual
    pub pattern_to_dual: Answer,
    pub instances: Vec<DualInstance>,
    pub violations: usize,
    pub indeterminate: usize,
}

impl DualReport {
    pub fn holds(&self) -> bool {
        self.violations == 0 && self.indeterminate == 0
    }
}

/// Checks `F ↛ D`, then `F ↛ G ⇔ G → D` for each `G` in `family`.
/// Instances run in parallel; the report keeps family order.
pub fn dual_check(f: &Graph, d: &Graph, family: &[Graph]) -> Result<DualReport> {
    if !is_connected(f) || f.n() == 0 {
        return Err(Error::InvalidArgument("the pattern F must be connected".into()));
    }
    let pattern_to_dual = hom_exists(f, d)?.answer();
    let instances: Vec<DualInstance> = family
        .par_iter()
        .enumerate()
        .map(|(index, g)| {
            let pattern_maps = hom_exists(f, g)?.answer();
            let maps_to_dual = hom_exists(g, d)?.answer();
            let status = match (pattern_maps, maps_to_dual) {
                (Answer::Indeterminate, _) | (_, Answer::Indeterminate) => Answer::Indeterminate,
                (a, b) => {
                    if (a == Answer::No) == (b == Answer::Yes) {
                        Answer::Yes
                    } else {
                        Answer::No
                    }
                }
            };
            Ok(DualInstance {
                index,
                pattern_maps,
                maps_to_dual,
                status,
            })
        })
        .collect::<Result<_>>()?;
    let mut violations = instances.iter().filter(|i| i.status == Answer::No).count();
    let mut indeterminate = instances.iter().filter(|i| i.status == Answer::Indeterminate).count();
    match pattern_to_dual {
        Answer::Yes => violations += 1,
        Answer::Indeterminate => indeterminate += 1,
        Answer::No => {}
    }
    Ok(DualReport {
        pattern_to_dual,
        instances,
        violations,
        indeterminate,
    })
}
