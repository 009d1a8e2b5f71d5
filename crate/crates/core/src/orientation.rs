//! Orientations with per-arc provenance, as produced by augmentation.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::traversal::degeneracy;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ArcKind {
    Original,
    Fraternal,
    Transitive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ArcInfo {
    pub kind: ArcKind,
    pub round: usize,
}

/// A set of arcs over the vertices of `base`. Every edge of the base graph,
/// and every edge added later, is carried by exactly one arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    base: Graph,
    /// `in_arcs[head][tail]`
    in_arcs: Vec<BTreeMap<usize, ArcInfo>>,
}

impl Orientation {
    /// Orients each base edge as given; `arcs` must cover every edge of
    /// `base` exactly once and nothing else.
    pub fn from_arcs(base: Graph, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut in_arcs = vec![BTreeMap::new(); base.n()];
        for &(u, v) in arcs {
            if !base.has_edge(u, v) {
                return Err(Error::InvalidArgument(format!("arc {u}->{v} is not an edge")));
            }
            if in_arcs[u].contains_key(&v) || in_arcs[v].contains_key(&u) {
                return Err(Error::InvalidArgument(format!("edge {{{u},{v}}} oriented twice")));
            }
            in_arcs[v].insert(
                u,
                ArcInfo {
                    kind: ArcKind::Original,
                    round: 0,
                },
            );
        }
        let o = Orientation { base, in_arcs };
        if o.arc_count() != o.base.m() {
            return Err(Error::InvalidArgument("some edges are not oriented".into()));
        }
        Ok(o)
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn has_arc(&self, tail: usize, head: usize) -> bool {
        self.in_arcs[head].contains_key(&tail)
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    pub fn arc_info(&self, tail: usize, head: usize) -> Option<ArcInfo> {
        self.in_arcs[head].get(&tail).copied()
    }

    pub fn in_neighbors(&self, head: usize) -> impl Iterator<Item = usize> + '_ {
        self.in_arcs[head].keys().copied()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_arcs[v].len()
    }

    pub fn max_in_degree(&self) -> usize {
        self.in_arcs.iter().map(BTreeMap::len).max().unwrap_or(0)
    }

    pub fn arc_count(&self) -> usize {
        self.in_arcs.iter().map(BTreeMap::len).sum()
    }

    /// Arcs as `(tail, head, info)`, sorted by `(tail, head)`.
    pub fn arcs(&self) -> Vec<(usize, usize, ArcInfo)> {
        let mut out: Vec<_> = self
            .in_arcs
            .iter()
            .enumerate()
            .flat_map(|(h, tails)| tails.iter().map(move |(&t, &i)| (t, h, i)))
            .collect();
        out.sort_unstable_by_key(|&(t, h, _)| (t, h));
        out
    }

    /// Underlying undirected graph of all arcs (base edges plus additions).
    pub fn underlying_graph(&self) -> Graph {
        let edges: Vec<_> = self.arcs().into_iter().map(|(t, h, _)| (t, h)).collect();
        Graph::from_edges(self.n(), edges).expect("arcs join distinct vertices")
    }

    /// Adds `tail -> head` unless the pair is already joined in either direction.
    pub(crate) fn insert(&mut self, tail: usize, head: usize, info: ArcInfo) -> bool {
        if tail == head || self.adjacent(tail, head) {
            return false;
        }
        self.in_arcs[head].insert(tail, info);
        true
    }
}

/// Acyclic orientation from a smallest-last ordering: each edge points from
/// the later-removed endpoint to the earlier-removed one, so a vertex's
/// in-degree is its remaining degree at removal time and the maximum
/// in-degree equals the degeneracy.
pub fn degeneracy_orientation(g: &Graph) -> Orientation {
    let order = degeneracy(g).removal_order;
    let mut position = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let arcs: Vec<(usize, usize)> = g
        .edges()
        .map(|(u, v)| if position[u] > position[v] { (u, v) } else { (v, u) })
        .collect();
    Orientation::from_arcs(g.clone(), &arcs).expect("every edge oriented once")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::*;
    use crate::generators::random_tree;

    #[test]
    fn triangle_in_degrees() {
        let o = degeneracy_orientation(&complete(3));
        let mut d: Vec<usize> = (0..3).map(|v| o.in_degree(v)).collect();
        d.sort_unstable();
        assert_eq!(d, vec![0, 1, 2]);
    }

    #[test]
    fn trees_and_petersen() {
        for seed in 0..5 {
            assert_eq!(degeneracy_orientation(&random_tree(20, seed)).max_in_degree(), 1);
        }
        assert_eq!(degeneracy_orientation(&petersen()).max_in_degree(), 3);
    }

    #[test]
    fn orientation_covers_base() {
        let g = grid(3, 3);
        let o = degeneracy_orientation(&g);
        assert_eq!(o.arc_count(), g.m());
        assert_eq!(o.underlying_graph(), g);
        assert!(o.arcs().iter().all(|(_, _, i)| i.kind == ArcKind::Original && i.round == 0));
    }

    #[test]
    fn from_arcs_rejects_bad_input() {
        let g = path(3);
        assert!(Orientation::from_arcs(g.clone(), &[(0, 1)]).is_err());
        assert!(Orientation::from_arcs(g.clone(), &[(0, 2), (1, 2)]).is_err());
        assert!(Orientation::from_arcs(g.clone(), &[(0, 1), (1, 0), (1, 2)]).is_err());
        assert!(Orientation::from_arcs(g, &[(1, 0), (1, 2)]).is_ok());
    }
}
