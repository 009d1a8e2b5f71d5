//! Dinic maximum flow with integer capacities.

use std::collections::VecDeque;

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: i64,
    /// index of the reverse arc in `arcs[to]`
    rev: usize,
}

#[derive(Clone, Debug)]
pub struct FlowNetwork {
    arcs: Vec<Vec<Arc>>,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork {
            arcs: vec![Vec::new(); n],
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize, cap: i64) {
        let ru = self.arcs[v].len();
        let rv = self.arcs[u].len();
        self.arcs[u].push(Arc { to: v, cap, rev: ru });
        self.arcs[v].push(Arc { to: u, cap: 0, rev: rv });
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        loop {
            let level = self.levels(s);
            if level[t] == usize::MAX {
                return total;
            }
            let mut next = vec![0; self.arcs.len()];
            loop {
                let f = self.augment(s, t, i64::MAX, &level, &mut next);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
    }

    fn levels(&self, s: usize) -> Vec<usize> {
        let mut level = vec![usize::MAX; self.arcs.len()];
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for a in &self.arcs[u] {
                if a.cap > 0 && level[a.to] == usize::MAX {
                    level[a.to] = level[u] + 1;
                    queue.push_back(a.to);
                }
            }
        }
        level
    }

    fn augment(&mut self, u: usize, t: usize, limit: i64, level: &[usize], next: &mut [usize]) -> i64 {
        if u == t {
            return limit;
        }
        while next[u] < self.arcs[u].len() {
            let Arc { to, cap, rev } = self.arcs[u][next[u]];
            if cap > 0 && level[to] == level[u] + 1 {
                let f = self.augment(to, t, limit.min(cap), level, next);
                if f > 0 {
                    self.arcs[u][next[u]].cap -= f;
                    self.arcs[to][rev].cap += f;
                    return f;
                }
            }
            next[u] += 1;
        }
        0
    }

    /// Nodes reachable from `s` in the residual network; after
    /// [`FlowNetwork::max_flow`] this is the source side of a minimum cut.
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        self.levels(s).into_iter().map(|l| l != usize::MAX).collect()
    }
}
