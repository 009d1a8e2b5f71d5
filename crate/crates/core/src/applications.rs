//! Exact-distance colorings, odd-distance sets, neighborhood covers,
//! induced pattern scans and a desk-scale choosability decision.

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{complete, complete_bipartite, path};
use crate::cliques::maximum_clique_with_limit;
use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::iso::find_embedding;
use crate::traversal::{ball, bfs_distances, distance_matrix, smallest_last_coloring, UNREACHABLE};
use crate::verdict::Verdict;

/// Same vertices; `u ~ v` iff `dist(u, v) = n` exactly.
pub fn exact_distance_graph(g: &Graph, n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidArgument("distance must be at least 1".into()));
    }
    let dist = distance_matrix(g);
    let edges = g
        .vertices()
        .flat_map(|u| (u + 1..g.n()).map(move |v| (u, v)))
        .filter(|&(u, v)| dist[u][v] == n);
    Graph::from_edges(g.n(), edges)
}

fn require_odd(n: usize) -> Result<()> {
    if n % 2 == 0 {
        return Err(Error::InvalidArgument(format!("distance {n} is not odd")));
    }
    Ok(())
}

/// Greedy smallest-last proper coloring of the exact distance-`n` graph.
pub fn dn_coloring(g: &Graph, n: usize) -> Result<Coloring> {
    require_odd(n)?;
    Ok(Coloring::new(smallest_last_coloring(&exact_distance_graph(g, n)?)))
}

/// First pair at distance exactly `n` sharing a color.
pub fn verify_dn_coloring(g: &Graph, n: usize, c: &Coloring) -> Result<Verdict<(usize, usize)>> {
    c.check_total(g)?;
    let d = exact_distance_graph(g, n)?;
    let clash = d.edges().find(|&(u, v)| c.colors[u] == c.colors[v]);
    Ok(clash.map_or(Verdict::Holds, Verdict::Violated))
}

pub const ODD_SET_LIMIT: usize = 30;

/// A largest set of vertices pairwise at odd distance, as a maximum clique
/// of the odd-distance graph.
pub fn max_odd_distance_set(g: &Graph) -> Result<Vec<usize>> {
    if g.n() > ODD_SET_LIMIT {
        return Err(Error::SizeLimit {
            what: "odd-distance set search",
            size: g.n(),
            limit: ODD_SET_LIMIT,
        });
    }
    let dist = distance_matrix(g);
    let edges = g
        .vertices()
        .flat_map(|u| (u + 1..g.n()).map(move |v| (u, v)))
        .filter(|&(u, v)| dist[u][v] != UNREACHABLE && dist[u][v] % 2 == 1);
    let odd = Graph::from_edges(g.n(), edges)?;
    maximum_clique_with_limit(&odd, ODD_SET_LIMIT)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cluster {
    pub vertices: Vec<usize>,
    pub center: usize,
    /// eccentricity of `center` inside the cluster
    pub radius: usize,
}

/// An r-neighborhood cover with clusters of radius at most `2r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cover {
    pub r: usize,
    pub clusters: Vec<Cluster>,
    /// clusters containing each vertex
    pub membership: Vec<usize>,
}

impl Cover {
    /// Maximum membership, an upper bound on the cover number.
    pub fn degree(&self) -> usize {
        self.membership.iter().copied().max().unwrap_or(0)
    }
}

fn eccentricity_within(g: &Graph, set: &[usize], center: usize) -> Result<usize> {
    let (sub, back) = g.induced_subgraph(set)?;
    let local = back.iter().position(|&v| v == center).expect("center in set");
    Ok(bfs_distances(&sub, local).into_iter().max().unwrap_or(0))
}

fn contains(sorted: &[usize], items: &[usize]) -> bool {
    items.iter().all(|v| sorted.binary_search(v).is_ok())
}

/// Greedy: the smallest vertex `c` whose `N_r` lies in no cluster yet gets
/// the cluster `N_2r(c)`. Shortest paths from `c` stay inside that ball, so
/// it is connected with radius at most `2r`, and it contains `N_r(c)`.
pub fn neighborhood_cover(g: &Graph, r: usize) -> Result<Cover> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    let balls: Vec<Vec<usize>> = g.vertices().map(|v| ball(g, v, r)).collect();
    let mut covered = vec![false; g.n()];
    let mut clusters = Vec::new();
    while let Some(c) = covered.iter().position(|&x| !x) {
        let vertices = ball(g, c, 2 * r);
        for v in g.vertices() {
            if !covered[v] && contains(&vertices, &balls[v]) {
                covered[v] = true;
            }
        }
        let radius = eccentricity_within(g, &vertices, c)?;
        clusters.push(Cluster {
            vertices,
            center: c,
            radius,
        });
    }
    let mut membership = vec![0; g.n()];
    for cl in &clusters {
        for &v in &cl.vertices {
            membership[v] += 1;
        }
    }
    Ok(Cover { r, clusters, membership })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoverViolation {
    Malformed { cluster: usize },
    Disconnected { cluster: usize },
    RadiusTooLarge { cluster: usize, radius: usize },
    Uncovered { vertex: usize },
}

/// Checks every cluster is connected with radius at most `2r` (from its
/// best center) and that every `N_r(v)` lies in some cluster.
pub fn verify_cover(g: &Graph, cov: &Cover) -> Result<Verdict<CoverViolation>> {
    let mut sorted = Vec::with_capacity(cov.clusters.len());
    for (i, cl) in cov.clusters.iter().enumerate() {
        let mut vs = cl.vertices.clone();
        vs.sort_unstable();
        vs.dedup();
        if vs.is_empty() || vs.len() != cl.vertices.len() || vs.iter().any(|&v| v >= g.n()) {
            return Ok(Verdict::Violated(CoverViolation::Malformed { cluster: i }));
        }
        let (sub, _) = g.induced_subgraph(&vs)?;
        let radius = sub
            .vertices()
            .map(|c| bfs_distances(&sub, c).into_iter().max().unwrap_or(0))
            .min()
            .unwrap_or(0);
        if radius == UNREACHABLE {
            return Ok(Verdict::Violated(CoverViolation::Disconnected { cluster: i }));
        }
        if radius > 2 * cov.r {
            return Ok(Verdict::Violated(CoverViolation::RadiusTooLarge { cluster: i, radius }));
        }
        sorted.push(vs);
    }
    for v in g.vertices() {
        let nb = ball(g, v, cov.r);
        if !sorted.iter().any(|cl| contains(cl, &nb)) {
            return Ok(Verdict::Violated(CoverViolation::Uncovered { vertex: v }));
        }
    }
    Ok(Verdict::Holds)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternHit {
    pub pattern: String,
    pub present: bool,
    /// host vertices of an induced copy, in pattern vertex order
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub path: PatternHit,
    pub clique: PatternHit,
    pub biclique: PatternHit,
}

pub const SCAN_LIMITS: (usize, usize, usize) = (7, 6, 4);

/// Looks for induced `P_s`, `K_t` and `K_{q,q}`.
pub fn induced_pattern_scan(g: &Graph, s: usize, t: usize, q: usize) -> Result<ScanReport> {
    for (what, size, limit) in [
        ("induced path order", s, SCAN_LIMITS.0),
        ("induced clique order", t, SCAN_LIMITS.1),
        ("induced biclique side", q, SCAN_LIMITS.2),
    ] {
        if size > limit {
            return Err(Error::SizeLimit { what, size, limit });
        }
        if size == 0 {
            return Err(Error::InvalidArgument(format!("{what} must be at least 1")));
        }
    }
    let hit = |pattern: String, h: Graph| {
        let witness = find_embedding(&h, g, true);
        PatternHit {
            pattern,
            present: witness.is_some(),
            witness,
        }
    };
    Ok(ScanReport {
        path: hit(format!("P_{s}"), path(s)),
        clique: hit(format!("K_{t}"), complete(t)),
        biclique: hit(format!("K_{{{q},{q}}}"), complete_bipartite(q, q)),
    })
}

pub const CHOOSABILITY_LIMITS: (usize, usize) = (7, 2);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Choosability {
    pub k: usize,
    pub choosable: bool,
    /// a list assignment with no proper list coloring
    pub bad_lists: Option<Vec<Vec<usize>>>,
}

/// Exhaustive k-choosability. Vertices of degree below `k` are removed
/// first (they can always be colored last). The remaining vertices get
/// lists in canonical form: colors are numbered by first appearance, so
/// each new list takes some old colors plus the next unused ones. At most
/// `k·n` colors ever appear.
pub fn is_k_choosable(g: &Graph, k: usize) -> Result<Choosability> {
    let (max_n, max_k) = CHOOSABILITY_LIMITS;
    if g.n() > max_n {
        return Err(Error::SizeLimit {
            what: "choosability order",
            size: g.n(),
            limit: max_n,
        });
    }
    if k > max_k {
        return Err(Error::SizeLimit {
            what: "choosability list size",
            size: k,
            limit: max_k,
        });
    }
    let answer = |bad: Option<Vec<Vec<usize>>>| Choosability {
        k,
        choosable: bad.is_none(),
        bad_lists: bad,
    };
    if k == 0 {
        let bad = (g.n() > 0).then(|| vec![Vec::new(); g.n()]);
        return Ok(answer(bad));
    }
    // peel vertices of degree < k
    let mut alive = vec![true; g.n()];
    loop {
        let low = g
            .vertices()
            .find(|&v| alive[v] && g.neighbors(v).iter().filter(|&&w| alive[w]).count() < k);
        match low {
            Some(v) => alive[v] = false,
            None => break,
        }
    }
    let rest: Vec<usize> = g.vertices().filter(|&v| alive[v]).collect();
    if rest.is_empty() {
        return Ok(answer(None));
    }
    let (core, back) = g.induced_subgraph(&rest)?;
    // breadth-first order so partial assignments cover connected pieces
    let order = bfs_order(&core);
    let search = ListSearch { g: &core, order: &order, k };
    let bad = search.find_bad();
    Ok(answer(bad.map(|lists| {
        // peeled vertices get fresh colors, which never hurt
        let mut next = lists.iter().flatten().max().map_or(0, |&c| c + 1);
        let mut full = vec![Vec::new(); g.n()];
        for (i, l) in lists.into_iter().enumerate() {
            full[back[i]] = l;
        }
        for l in full.iter_mut().filter(|l| l.is_empty()) {
            *l = (next..next + k).collect();
            next += k;
        }
        full
    })))
}

fn bfs_order(g: &Graph) -> Vec<usize> {
    let mut seen = vec![false; g.n()];
    let mut order = Vec::with_capacity(g.n());
    for s in g.vertices() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut i = order.len();
        order.push(s);
        while i < order.len() {
            let v = order[i];
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
            i += 1;
        }
    }
    order
}

struct ListSearch<'a> {
    g: &'a Graph,
    order: &'a [usize],
    k: usize,
}

impl ListSearch<'_> {
    /// A bad assignment (lists indexed by vertex), if any.
    fn find_bad(&self) -> Option<Vec<Vec<usize>>> {
        let first: Vec<Vec<usize>> = self.next_lists(0);
        // branch on the first two vertices in parallel; keep the first hit
        let starts: Vec<Vec<Vec<usize>>> = first
            .into_iter()
            .flat_map(|l0| {
                let used = l0.len();
                let mut prefix = vec![l0];
                if self.order.len() > 1 {
                    self.next_lists(used)
                        .into_iter()
                        .map(|l1| {
                            let mut p = prefix.clone();
                            p.push(l1);
                            p
                        })
                        .collect::<Vec<_>>()
                } else {
                    vec![std::mem::take(&mut prefix)]
                }
            })
            .collect();
        starts.into_par_iter().find_map_first(|mut prefix| {
            let used = prefix.iter().flatten().max().map_or(0, |&c| c + 1);
            if !self.colorable(&prefix) {
                return Some(self.by_vertex(&prefix));
            }
            self.extend(&mut prefix, used).then(|| self.by_vertex(&prefix))
        })
    }

    fn by_vertex(&self, prefix: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let mut lists = vec![Vec::new(); self.g.n()];
        for (i, l) in prefix.iter().enumerate() {
            lists[self.order[i]] = l.clone();
        }
        lists
    }

    /// Canonical lists for the next vertex when colors `0..used` exist.
    fn next_lists(&self, used: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for fresh in 0..=self.k {
            let old = self.k - fresh;
            if old > used {
                continue;
            }
            let new: Vec<usize> = (used..used + fresh).collect();
            combinations(used, old, &mut |c| {
                let mut l = c.to_vec();
                l.extend_from_slice(&new);
                out.push(l);
            });
        }
        out
    }

    /// Depth-first; true when `prefix` has been extended to a bad
    /// assignment. Non-colorable prefixes are bad already.
    fn extend(&self, prefix: &mut Vec<Vec<usize>>, used: usize) -> bool {
        if prefix.len() == self.order.len() {
            return false;
        }
        for l in self.next_lists(used) {
            let now = used.max(l.iter().max().map_or(0, |&c| c + 1));
            prefix.push(l);
            if !self.colorable(prefix) || self.extend(prefix, now) {
                return true;
            }
            prefix.pop();
        }
        false
    }

    /// Whether the first `prefix.len()` vertices in order can be colored
    /// from their lists.
    fn colorable(&self, prefix: &[Vec<usize>]) -> bool {
        let mut pos = vec![usize::MAX; self.g.n()];
        for (i, &v) in self.order[..prefix.len()].iter().enumerate() {
            pos[v] = i;
        }
        let mut chosen = vec![usize::MAX; prefix.len()];
        fn rec(s: &ListSearch<'_>, prefix: &[Vec<usize>], pos: &[usize], chosen: &mut [usize], i: usize) -> bool {
            if i == prefix.len() {
                return true;
            }
            let v = s.order[i];
            for &c in &prefix[i] {
                let clash = s.g.neighbors(v).iter().any(|&w| pos[w] < i && chosen[pos[w]] == c);
                if !clash {
                    chosen[i] = c;
                    if rec(s, prefix, pos, chosen, i + 1) {
                        return true;
                    }
                }
            }
            false
        }
        rec(self, prefix, &pos, &mut chosen, 0)
    }
}

/// `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize, visit: &mut dyn FnMut(&[usize])) {
    fn rec(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            visit(cur);
            return;
        }
        for v in from..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(n, k, v + 1, cur, visit);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut Vec::new(), visit);
}

/// Whether `lists` admits a proper coloring choosing from each list.
pub fn list_colorable(g: &Graph, lists: &[Vec<usize>]) -> bool {
    let order: Vec<usize> = g.vertices().collect();
    let s = ListSearch { g, order: &order, k: 0 };
    lists.len() == g.n() && s.colorable(lists)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::*;
    use crate::iso::is_isomorphic;

    #[test]
    fn exact_distance_examples() {
        let c6 = cycle(6).unwrap();
        let d = exact_distance_graph(&c6, 3).unwrap();
        assert_eq!(d.edges().collect::<Vec<_>>(), vec![(0, 3), (1, 4), (2, 5)]);
        let p = petersen();
        assert_eq!(exact_distance_graph(&p, 1).unwrap(), p);
        assert_eq!(exact_distance_graph(&path(3), 3).unwrap().m(), 0);
    }

    #[test]
    fn dn_examples() {
        assert_eq!(dn_coloring(&complete(3), 1).unwrap().used_colors(), 3);
        assert_eq!(dn_coloring(&cycle(6).unwrap(), 3).unwrap().used_colors(), 2);
        let p7 = path(7);
        let c = dn_coloring(&p7, 3).unwrap();
        assert!(verify_dn_coloring(&p7, 3, &c).unwrap().holds());
        assert!(dn_coloring(&p7, 2).is_err());
        let bad = Coloring::new(vec![0; 7]);
        assert_eq!(verify_dn_coloring(&p7, 3, &bad).unwrap(), Verdict::Violated((0, 3)));
    }

    #[test]
    fn odd_sets() {
        assert_eq!(max_odd_distance_set(&star(3)).unwrap().len(), 2);
        assert_eq!(max_odd_distance_set(&complete(4)).unwrap().len(), 4);
        assert_eq!(max_odd_distance_set(&cycle(6).unwrap()).unwrap().len(), 2);
        assert!(max_odd_distance_set(&path(31)).is_err());
    }

    #[test]
    fn covers() {
        let s = star(5);
        let cov = neighborhood_cover(&s, 1).unwrap();
        assert_eq!(cov.clusters.len(), 1);
        assert_eq!(cov.degree(), 1);
        let p9 = path(9);
        let cov = neighborhood_cover(&p9, 1).unwrap();
        assert!(verify_cover(&p9, &cov).unwrap().holds());
        // diameter 2: the radius-2 ball around 0 is the whole graph
        let pet = petersen();
        let cov = neighborhood_cover(&pet, 1).unwrap();
        assert!(verify_cover(&pet, &cov).unwrap().holds());
        assert_eq!(cov.clusters.len(), 1);
        assert_eq!(cov.degree(), 1);
    }

    #[test]
    fn planted_cover_violations() {
        let s = star(5);
        let mut cov = neighborhood_cover(&s, 1).unwrap();
        cov.clusters[0].vertices.retain(|&v| v != 5);
        assert_eq!(
            verify_cover(&s, &cov).unwrap(),
            Verdict::Violated(CoverViolation::Uncovered { vertex: 0 })
        );
        let wide = Cover {
            r: 2,
            clusters: vec![Cluster {
                vertices: (0..9).collect(),
                center: 4,
                radius: 4,
            }],
            membership: vec![1; 9],
        };
        assert!(verify_cover(&path(9), &wide).unwrap().holds());
        let wider = Cover {
            clusters: vec![Cluster {
                vertices: (0..11).collect(),
                center: 5,
                radius: 5,
            }],
            membership: vec![1; 11],
            ..wide
        };
        assert_eq!(
            verify_cover(&path(11), &wider).unwrap(),
            Verdict::Violated(CoverViolation::RadiusTooLarge { cluster: 0, radius: 5 })
        );
    }

    #[test]
    fn scans() {
        let r = induced_pattern_scan(&cycle(7).unwrap(), 5, 3, 2).unwrap();
        assert!(r.path.present);
        assert!(!r.clique.present);
        let r = induced_pattern_scan(&complete(5), 2, 5, 1).unwrap();
        assert!(r.clique.present);
        let r = induced_pattern_scan(&petersen(), 3, 2, 2).unwrap();
        assert!(!r.biclique.present);
        let w = r.path.witness.unwrap();
        let (h, _) = petersen().induced_subgraph(&w).unwrap();
        assert!(is_isomorphic(&h, &path(3)));
        assert!(induced_pattern_scan(&petersen(), 8, 2, 2).is_err());
    }

    #[test]
    fn choosability() {
        assert!(is_k_choosable(&complete(2), 2).unwrap().choosable);
        assert!(is_k_choosable(&cycle(4).unwrap(), 2).unwrap().choosable);
        let g = complete_bipartite(2, 4);
        let res = is_k_choosable(&g, 2).unwrap();
        assert!(!res.choosable);
        let lists = res.bad_lists.unwrap();
        assert!(lists.iter().all(|l| l.len() == 2));
        assert!(!list_colorable(&g, &lists));
        assert!(!is_k_choosable(&complete(3), 2).unwrap().choosable);
        assert!(!is_k_choosable(&cycle(5).unwrap(), 2).unwrap().choosable);
        assert!(is_k_choosable(&path(7), 2).unwrap().choosable);
        assert!(is_k_choosable(&Graph::empty(3), 1).unwrap().choosable);
        assert!(!is_k_choosable(&path(2), 1).unwrap().choosable);
        assert!(is_k_choosable(&path(8), 2).is_err());
        assert!(is_k_choosable(&path(3), 3).is_err());
    }
}
