//! Dinic max-flow on small integer networks, used to minimize
//! `c_cover |N[A]| - c_pick |A|` over subsets `A` of a fixed vertex set.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

const INF: u64 = u64::MAX / 4;

struct Edge {
    to: usize,
    cap: u64,
}

pub(crate) struct Network {
    edges: Vec<Edge>,
    out: Vec<Vec<usize>>,
    level: Vec<i32>,
    next: Vec<usize>,
}

impl Network {
    pub(crate) fn new(nodes: usize) -> Network {
        Network {
            edges: Vec::new(),
            out: vec![Vec::new(); nodes],
            level: vec![0; nodes],
            next: vec![0; nodes],
        }
    }

    pub(crate) fn add(&mut self, from: usize, to: usize, cap: u64) {
        self.out[from].push(self.edges.len());
        self.edges.push(Edge { to, cap });
        self.out[to].push(self.edges.len());
        self.edges.push(Edge { to: from, cap: 0 });
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &e in &self.out[u] {
                let v = self.edges[e].to;
                if self.edges[e].cap > 0 && self.level[v] < 0 {
                    self.level[v] = self.level[u] + 1;
                    q.push_back(v);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: u64) -> u64 {
        if u == t {
            return pushed;
        }
        while self.next[u] < self.out[u].len() {
            let e = self.out[u][self.next[u]];
            let v = self.edges[e].to;
            if self.edges[e].cap > 0 && self.level[v] == self.level[u] + 1 {
                let got = self.dfs(v, t, pushed.min(self.edges[e].cap));
                if got > 0 {
                    self.edges[e].cap -= got;
                    self.edges[e ^ 1].cap += got;
                    return got;
                }
            }
            self.next[u] += 1;
        }
        0
    }

    pub(crate) fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let mut flow = 0;
        while self.bfs(s, t) {
            self.next.iter_mut().for_each(|n| *n = 0);
            loop {
                let f = self.dfs(s, t, INF);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
        flow
    }

    /// Nodes reachable from `s` in the residual network.
    pub(crate) fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &e in &self.out[u] {
                let v = self.edges[e].to;
                if self.edges[e].cap > 0 && !seen[v] {
                    seen[v] = true;
                    q.push_back(v);
                }
            }
        }
        seen
    }
}

/// Smallest `A` with `forced ⊆ A ⊆ pool` minimizing
/// `cover_cost |N[A]| - pick_gain |A|`, where `N[A]` uses `adj`.
pub(crate) fn minimal_minimizer(
    adj: &[FixedBitSet],
    pool: &[usize],
    forced: &[usize],
    pick_gain: u64,
    cover_cost: u64,
) -> FixedBitSet {
    let n = adj.len();
    let s = pool.len() + n;
    let t = s + 1;
    let mut net = Network::new(t + 1);
    for (i, &a) in pool.iter().enumerate() {
        let cap = if forced.contains(&a) { INF } else { pick_gain };
        net.add(s, i, cap);
        net.add(i, pool.len() + a, INF);
        for x in adj[a].ones() {
            net.add(i, pool.len() + x, INF);
        }
    }
    for x in 0..n {
        net.add(pool.len() + x, t, cover_cost);
    }
    net.max_flow(s, t);
    let side = net.source_side(s);
    let mut out = FixedBitSet::with_capacity(n);
    for (i, &a) in pool.iter().enumerate() {
        if side[i] {
            out.insert(a);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn max_flow_on_a_small_network() {
        let mut net = Network::new(4);
        net.add(0, 1, 3);
        net.add(0, 2, 2);
        net.add(1, 2, 1);
        net.add(1, 3, 2);
        net.add(2, 3, 3);
        assert_eq!(net.max_flow(0, 3), 5);
    }

    #[test]
    fn minimizer_prefers_cheap_cover() {
        // path 0-1-2-3 with pool {0, 2}; N[0] = {0,1}, N[2] = {1,2,3}
        let rows = crate::kneser::solver::rows_from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let a = minimal_minimizer(&rows, &[0, 2], &[0], 2, 1);
        // |N[{0}]| - 2 = 0, |N[{0,2}]| - 4 = 0: the smaller set wins
        assert_eq!(a.ones().collect::<Vec<_>>(), vec![0]);
        let a = minimal_minimizer(&rows, &[0, 2], &[0], 3, 1);
        assert_eq!(a.ones().collect::<Vec<_>>(), vec![0, 2]);
    }
}
