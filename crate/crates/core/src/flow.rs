//! Unit vertex-capacity maximum flow (vertex splitting) for Menger paths.

use std::collections::{HashSet, VecDeque};

use crate::graph::IndexedGraph;

struct Arc {
    to: usize,
    cap: u32,
}

struct Network {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Self {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn add(&mut self, from: usize, to: usize, cap: u32) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0 });
    }

    /// One shortest augmenting path of unit value.
    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut via = vec![usize::MAX; self.out.len()];
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for &a in &self.out[u] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    via[arc.to] = a;
                    queue.push_back(arc.to);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut v = t;
        while v != s {
            let a = via[v];
            self.arcs[a].cap -= 1;
            self.arcs[a ^ 1].cap += 1;
            v = self.arcs[a ^ 1].to;
        }
        true
    }
}

/// `k` pairwise internally vertex-disjoint paths from `s` to `t`, or `None`
/// if fewer exist. Node `v` splits into `2v` (in) and `2v + 1` (out).
pub fn vertex_disjoint_paths(g: &IndexedGraph, s: usize, t: usize, k: usize) -> Option<Vec<Vec<usize>>> {
    assert_ne!(s, t);
    let n = g.len();
    let big = k as u32;
    let mut net = Network::new(2 * n);
    for v in 0..n {
        let cap = if v == s || v == t { big } else { 1 };
        net.add(2 * v, 2 * v + 1, cap);
    }
    // Arc index of the original edge u -> w, for decomposition.
    let mut edge_arcs = Vec::new();
    // No arcs enter s or leave t, so the flow has no cycle through them.
    for (u, w) in g.edges() {
        for (x, y) in [(u, w), (w, u)] {
            if y != s && x != t {
                edge_arcs.push((x, y, net.arcs.len()));
                net.add(2 * x + 1, 2 * y, 1);
            }
        }
    }
    let mut value = 0;
    while value < k && net.augment(2 * s + 1, 2 * t) {
        value += 1;
    }
    if value < k {
        return None;
    }
    // Unit flow on x -> y; opposing units on one edge cancel.
    let flow: HashSet<(usize, usize)> = edge_arcs
        .iter()
        .filter(|&&(_, _, a)| net.arcs[a].cap == 0)
        .map(|&(x, y, _)| (x, y))
        .collect();
    let mut next: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(x, y) in &flow {
        if !flow.contains(&(y, x)) {
            next[x].push(y);
        }
    }
    for list in &mut next {
        list.sort_unstable();
    }
    let mut paths = Vec::with_capacity(k);
    for _ in 0..k {
        let mut path = vec![s];
        let mut v = s;
        while v != t {
            v = next[v].remove(0);
            path.push(v);
        }
        paths.push(path);
    }
    Some(paths)
}
