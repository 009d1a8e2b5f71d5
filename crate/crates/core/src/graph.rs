//! Immutable simple undirected graphs over dense vertex ids.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A simple undirected graph on vertices `0..n`.
///
/// Adjacency lists are kept sorted, so equality is structural. An optional
/// label map carries the external tokens a graph was parsed from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
    labels: Option<Vec<String>>,
}

/// Serialized as `{"n": .., "edges": [[u, v], ..]}` plus `labels` when set.
impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let fields = if self.labels.is_some() { 3 } else { 2 };
        let mut st = s.serialize_struct("Graph", fields)?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("edges", &self.edges().map(|(u, v)| [u, v]).collect::<Vec<_>>())?;
        if let Some(labels) = &self.labels {
            st.serialize_field("labels", labels)?;
        }
        st.end()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
            labels: None,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop {
                    line: 0,
                    token: u.to_string(),
                });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Ok(Graph {
            adj,
            m: m / 2,
            labels: None,
        })
    }

    /// Attaches external labels. Labels must be distinct and one per vertex.
    /// Labels equal to the dense ids themselves are dropped.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::InvalidArgument(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if l.is_empty() || l.contains('#') || l.chars().any(char::is_whitespace) {
                return Err(Error::InvalidArgument(format!("label `{l}` is not a token")));
            }
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidArgument(format!("duplicate label `{l}`")));
            }
        }
        let identity = labels.iter().enumerate().all(|(i, l)| *l == i.to_string());
        self.labels = if identity { None } else { Some(labels) };
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// External token of `v`: its label if present, else the id.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    /// Neighborhoods as bitmasks. Only for graphs with at most 64 vertices.
    pub fn neighbor_masks(&self) -> Result<Vec<u64>> {
        if self.n() > 64 {
            return Err(Error::SizeLimit {
                what: "bitset adjacency",
                size: self.n(),
                limit: 64,
            });
        }
        Ok(self
            .adj
            .iter()
            .map(|ns| ns.iter().fold(0u64, |acc, &v| acc | (1 << v)))
            .collect())
    }

    /// Subgraph induced by `vertices`, re-densified in increasing id order.
    /// Returns the graph and the back-map from new ids to old ids.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        for &v in &keep {
            self.check_vertex(v)?;
        }
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let adj: Vec<Vec<usize>> = keep
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect()
            })
            .collect();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        let labels = self
            .labels
            .as_ref()
            .map(|l| keep.iter().map(|&v| l[v].clone()).collect());
        Ok((Graph { adj, m, labels }, keep))
    }

    /// Induced subgraph on the vertices set in `mask` (graphs with ≤ 64 vertices).
    pub fn induced_by_mask(&self, mask: u64) -> (Graph, Vec<usize>) {
        let vs: Vec<usize> = (0..self.n().min(64)).filter(|&v| mask >> v & 1 == 1).collect();
        self.induced_subgraph(&vs).expect("mask within range")
    }

    /// Replaces every edge by a path with `p` internal vertices. The internal
    /// vertices of the `i`-th edge (in [`Graph::edges`] order) get ids
    /// `n + i*p .. n + (i+1)*p`, ordered from the smaller endpoint.
    pub fn subdivide(&self, p: usize) -> Graph {
        if p == 0 {
            return Graph { labels: None, ..self.clone() };
        }
        let n = self.n();
        let mut edges = Vec::with_capacity(self.m * (p + 1));
        for (i, (u, v)) in self.edges().enumerate() {
            let base = n + i * p;
            edges.push((u, base));
            for k in 1..p {
                edges.push((base + k - 1, base + k));
            }
            edges.push((base + p - 1, v));
        }
        Graph::from_edges(n + p * self.m, edges).expect("subdivision is simple")
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n();
        let edges = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + n, v + n)));
        Graph::from_edges(n + other.n(), edges).expect("union is simple")
    }

    /// Removes the given edges (missing ones are ignored).
    pub fn without_edges(&self, remove: &[(usize, usize)]) -> Graph {
        let edges = self.edges().filter(|&(u, v)| {
            !remove.iter().any(|&(a, b)| (a, b) == (u, v) || (b, a) == (u, v))
        });
        let mut g = Graph::from_edges(self.n(), edges).expect("subgraph is simple");
        g.labels = self.labels.clone();
        g
    }

    /// Graph on the same vertex set with the given extra edges.
    pub fn with_edges(&self, extra: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::from_edges(self.n(), self.edges().chain(extra.iter().copied()))?;
        g.labels = self.labels.clone();
        Ok(g)
    }

    /// Checks that `map` is an isomorphism onto `other` (structure only).
    pub fn is_isomorphism(&self, other: &Graph, map: &[usize]) -> bool {
        if self.n() != other.n() || self.m() != other.m() || map.len() != self.n() {
            return false;
        }
        let mut seen = vec![false; other.n()];
        for &x in map {
            if x >= other.n() || std::mem::replace(&mut seen[x], true) {
                return false;
            }
        }
        self.edges().all(|(u, v)| other.has_edge(map[u], map[v]))
    }

    /// Structural equality ignoring labels.
    pub fn same_structure(&self, other: &Graph) -> bool {
        self.adj == other.adj
    }
}
