//! Brute-force oracles shared by the property tests. None of these call
//! the library's algorithms; they work on adjacency bitmasks directly.
#![allow(dead_code)]

use num_rational::Ratio;
use proptest::prelude::*;
use tdkit::Graph;

pub fn graph_strategy(min_n: usize, max_n: usize, edge_prob: f64) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(proptest::bool::weighted(edge_prob), n * n.saturating_sub(1) / 2).prop_map(
            move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[k] {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                Graph::from_edges(n, edges).unwrap()
            },
        )
    })
}

pub fn adjacency(g: &Graph) -> Vec<u32> {
    assert!(g.n() <= 32);
    let mut adj = vec![0u32; g.n()];
    for (u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

pub fn full(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

pub fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&i| mask >> i & 1 == 1)
}

/// Vertices reachable from `start` inside `within`.
pub fn reach(adj: &[u32], within: u32, start: usize) -> u32 {
    let mut seen = 1u32 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in bits(frontier) {
            next |= adj[v] & within;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen
}

pub fn mask_connected(adj: &[u32], mask: u32) -> bool {
    mask != 0 && reach(adj, mask, mask.trailing_zeros() as usize) == mask
}

pub fn components_of(adj: &[u32], mut mask: u32) -> Vec<u32> {
    let mut out = Vec::new();
    while mask != 0 {
        let c = reach(adj, mask, mask.trailing_zeros() as usize);
        out.push(c);
        mask &= !c;
    }
    out
}

/// Tree-depth straight from the recursive definition, no memo:
/// empty → 0, disconnected → max over components, else 1 + min over
/// deleting one vertex.
pub fn td_oracle(g: &Graph) -> usize {
    fn rec(adj: &[u32], mask: u32) -> usize {
        if mask == 0 {
            return 0;
        }
        let comps = components_of(adj, mask);
        if comps.len() > 1 {
            return comps.iter().map(|&c| rec(adj, c)).max().unwrap();
        }
        bits(mask).map(|v| 1 + rec(adj, mask & !(1 << v))).min().unwrap()
    }
    let adj = adjacency(g);
    rec(&adj, full(g.n()))
}

/// Every connected subgraph has a color that appears exactly once.
pub fn is_centered(adj: &[u32], colors: &[usize]) -> bool {
    let n = colors.len();
    (1..=full(n)).all(|mask| {
        if !mask_connected(adj, mask) {
            return true;
        }
        let mut count = [0usize; 32];
        for v in bits(mask) {
            count[colors[v]] += 1;
        }
        count.contains(&1)
    })
}

/// Two vertices of equal color are joined by no path whose interior
/// avoids colors above theirs.
pub fn is_ranking(adj: &[u32], colors: &[usize]) -> bool {
    let n = colors.len();
    (0..n).all(|u| {
        let c = colors[u];
        let low: u32 = (0..n).filter(|&w| colors[w] < c).fold(0, |m, w| m | 1 << w);
        // grow from u through lower colors; any same-colored vertex touched is a clash
        let inner = reach(adj, low | 1 << u, u);
        let touched = bits(inner).fold(adj[u], |m, w| m | adj[w]);
        bits(touched).all(|v| v == u || colors[v] != c)
    })
}

/// Calls `visit` on every coloring with colors below `k`, in restricted
/// growth form when `canonical` (colors appear in first-use order).
pub fn for_each_coloring(n: usize, k: usize, canonical: bool, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(
        n: usize,
        k: usize,
        canonical: bool,
        cur: &mut Vec<usize>,
        used: usize,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if cur.len() == n {
            return visit(cur);
        }
        let top = if canonical { (used + 1).min(k) } else { k };
        for c in 0..top {
            cur.push(c);
            let go = rec(n, k, canonical, cur, used.max(c + 1), visit);
            cur.pop();
            if !go {
                return false;
            }
        }
        true
    }
    rec(n, k, canonical, &mut Vec::new(), 0, visit)
}

/// Least `k` such that some coloring with `k` colors satisfies `ok`.
pub fn min_palette(n: usize, ok: &dyn Fn(&[usize]) -> bool, canonical: bool) -> usize {
    for k in 0..=n {
        let mut found = false;
        for_each_coloring(n, k, canonical, &mut |c| {
            found = ok(c);
            !found
        });
        if found {
            return k;
        }
    }
    unreachable!("n colors always suffice")
}

pub fn chromatic_oracle(g: &Graph) -> usize {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    min_palette(g.n(), &|c| edges.iter().all(|&(u, v)| c[u] != c[v]), true)
}

/// max over nonempty vertex subsets of m(S) / |S|.
pub fn densest_oracle(g: &Graph) -> Ratio<i64> {
    let adj = adjacency(g);
    let mut best = Ratio::from_integer(0);
    for mask in 1..=full(g.n()) {
        let m: u32 = bits(mask).map(|v| (adj[v] & mask).count_ones()).sum::<u32>() / 2;
        let r = Ratio::new(m as i64, mask.count_ones() as i64);
        if r > best {
            best = r;
        }
    }
    best
}

/// max over subgraphs of the minimum degree.
pub fn degeneracy_oracle(g: &Graph) -> usize {
    let adj = adjacency(g);
    (1..=full(g.n()))
        .map(|mask| bits(mask).map(|v| (adj[v] & mask).count_ones() as usize).min().unwrap())
        .max()
        .unwrap_or(0)
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            cur.swap(j, k - 1);
        }
    }
    heap(n, &mut cur, &mut out);
    out
}

pub fn automorphisms_oracle(h: &Graph) -> u64 {
    permutations(h.n())
        .iter()
        .filter(|p| h.edges().all(|(u, v)| h.has_edge(p[u], p[v])))
        .count() as u64
}

/// Injective maps V(h) → V(g) over all tuples.
pub fn embeddings_oracle(h: &Graph, g: &Graph, induced: bool) -> u64 {
    let (k, n) = (h.n(), g.n());
    let mut count = 0;
    let mut map = vec![0usize; k];
    fn rec(h: &Graph, g: &Graph, induced: bool, i: usize, map: &mut [usize], count: &mut u64) {
        if i == map.len() {
            let ok = (0..map.len()).all(|a| {
                (a + 1..map.len()).all(|b| {
                    let he = h.has_edge(a, b);
                    let ge = g.has_edge(map[a], map[b]);
                    if induced {
                        he == ge
                    } else {
                        !he || ge
                    }
                })
            });
            *count += ok as u64;
            return;
        }
        for x in 0..g.n() {
            if map[..i].contains(&x) {
                continue;
            }
            map[i] = x;
            rec(h, g, induced, i + 1, map, count);
        }
    }
    if k <= n {
        rec(h, g, induced, 0, &mut map, &mut count);
    }
    count
}

/// Copies of `h` in `g` by the embedding/automorphism identity. Induced
/// copies use induced embeddings, which are also divided by |Aut(h)|.
pub fn count_oracle(h: &Graph, g: &Graph, induced: bool) -> u64 {
    embeddings_oracle(h, g, induced) / automorphisms_oracle(h)
}

/// Any map V(g) → V(h) preserving edges, by enumerating all |h|^|g| maps.
pub fn hom_oracle(g: &Graph, h: &Graph) -> bool {
    if g.n() == 0 {
        return true;
    }
    let mut found = false;
    for_each_coloring(g.n(), h.n(), false, &mut |m| {
        found = g.edges().all(|(u, v)| h.has_edge(m[u], m[v]));
        !found
    });
    found
}

pub fn distances_oracle(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for (u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Exhaustive over all k-subsets of `0..universe` per vertex.
pub fn choosable_oracle(g: &Graph, k: usize) -> bool {
    let n = g.n();
    let universe = k * n;
    let mut lists: Vec<Vec<usize>> = Vec::new();
    let mut cur = Vec::new();
    fn subsets(u: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in from..u {
            cur.push(c);
            subsets(u, k, c + 1, cur, out);
            cur.pop();
        }
    }
    subsets(universe, k, 0, &mut cur, &mut lists);
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut all_good = true;
    for_each_coloring(n, lists.len(), false, &mut |choice| {
        // choice[v] indexes the list of v
        let mut colorable = false;
        for_each_coloring(n, k, false, &mut |pick| {
            colorable = edges
                .iter()
                .all(|&(u, v)| lists[choice[u]][pick[u]] != lists[choice[v]][pick[v]]);
            !colorable
        });
        all_good = colorable;
        colorable
    });
    all_good
}

pub const CATALOG: &[&str] = &[
    "K_1", "K_2", "K_3", "K_4", "K_5", "K_6", "P_2", "P_3", "P_5", "P_8", "C_3", "C_4", "C_5", "C_6", "C_8", "K_{1,3}",
    "K_{2,3}", "K_{3,3}", "star_5", "grid(3,3)", "grid(2,5)", "Q_3", "Petersen", "Clebsch", "K_3+P_4", "sub_1(K_4)",
];

pub fn catalog_graphs() -> Vec<(&'static str, Graph)> {
    CATALOG
        .iter()
        .map(|s| (*s, tdkit::catalog::named(s).unwrap()))
        .collect()
}

/// Radius of the subgraph induced by `mask`; `None` when disconnected.
pub fn radius_in(adj: &[u32], mask: u32) -> Option<usize> {
    if !mask_connected(adj, mask) {
        return None;
    }
    bits(mask)
        .map(|c| {
            let (mut seen, mut frontier, mut ecc) = (1u32 << c, 1u32 << c, 0);
            while seen != mask {
                let next = bits(frontier).fold(0, |m, v| m | adj[v]) & mask & !seen;
                seen |= next;
                frontier = next;
                ecc += 1;
            }
            ecc
        })
        .min()
}

/// Densest-subgraph value of the graph on `k` vertices with these edges.
pub fn densest_of(k: usize, edges: &[(usize, usize)]) -> Ratio<i64> {
    let g = Graph::from_edges(k, edges.iter().copied()).unwrap();
    densest_oracle(&g)
}

/// Shallow-minor density by trying every labeling of vertices with
/// branch set ids `1..` in first-use order, `0` meaning unused.
pub fn grad_oracle(g: &Graph, r: usize) -> Ratio<i64> {
    fn rec(adj: &[u32], r: usize, v: usize, sets: &mut Vec<u32>, best: &mut Ratio<i64>) {
        if v == adj.len() {
            if sets.is_empty() || sets.iter().any(|&s| radius_in(adj, s).is_none_or(|rad| rad > r)) {
                return;
            }
            let mut edges = Vec::new();
            for i in 0..sets.len() {
                for j in i + 1..sets.len() {
                    if bits(sets[i]).any(|x| adj[x] & sets[j] != 0) {
                        edges.push((i, j));
                    }
                }
            }
            let d = densest_of(sets.len(), &edges);
            if d > *best {
                *best = d;
            }
            return;
        }
        rec(adj, r, v + 1, sets, best);
        for i in 0..sets.len() {
            sets[i] |= 1 << v;
            rec(adj, r, v + 1, sets, best);
            sets[i] &= !(1 << v);
        }
        sets.push(1 << v);
        rec(adj, r, v + 1, sets, best);
        sets.pop();
    }
    let adj = adjacency(g);
    let mut best = Ratio::from_integer(0);
    rec(&adj, r, 0, &mut Vec::new(), &mut best);
    best
}
