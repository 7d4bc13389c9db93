//! Ordered-waypoint simple path search.
//!
//! A query asks for a simple path that starts at the first terminal, ends at
//! the last, and meets the terminals exactly in the given order. A terminal
//! may never be entered before its turn: the path is the image of an
//! injective arc, so a later waypoint touched early could not be visited
//! again.
//!
//! The router extends the path depth-first, trying neighbors nearest the
//! next terminal first (ties by index). Before expanding a node it checks, on the graph with the used
//! prefix deleted, that every remaining terminal is reachable and that no
//! cut vertex forces the remaining terminals to switch sides more than once.
//! The same scan marks pockets behind a cut vertex that hold no remaining
//! terminal; the path never enters them. What is left (the current vertex,
//! the next target and the set of live vertices) determines whether the
//! rest of the route exists, so failed states are remembered and skipped.
//! Every check only discards dead ends, so the search is exhaustive when it
//! reports `Unroutable`.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Result, SacError};
use crate::graph::IndexedGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Routability {
    Routable,
    Unroutable,
}

#[derive(Clone, Debug)]
pub struct OrderedQuery<'g> {
    graph: &'g IndexedGraph,
    terminals: Vec<usize>,
}

impl<'g> OrderedQuery<'g> {
    pub fn new(graph: &'g IndexedGraph, terminals: Vec<usize>) -> Result<Self> {
        if terminals.len() < 2 {
            return Err(SacError::MalformedQuery("need at least two terminals".into()));
        }
        let mut seen = vec![false; graph.len()];
        for &t in &terminals {
            if t >= graph.len() {
                return Err(SacError::MalformedQuery(format!("terminal {t} out of range")));
            }
            if std::mem::replace(&mut seen[t], true) {
                return Err(SacError::MalformedQuery(format!("terminal `{}` repeated", graph.id(t))));
            }
        }
        Ok(Self { graph, terminals })
    }

    pub fn from_ids<S: AsRef<str>>(graph: &'g IndexedGraph, terminals: &[S]) -> Result<Self> {
        let idx = terminals
            .iter()
            .map(|t| {
                graph
                    .index_of(t.as_ref())
                    .ok_or_else(|| SacError::MalformedQuery(format!("unknown terminal `{}`", t.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(graph, idx)
    }

    pub fn graph(&self) -> &'g IndexedGraph {
        self.graph
    }

    pub fn terminals(&self) -> &[usize] {
        &self.terminals
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RouteResult {
    pub decision: Routability,
    pub witness: Option<Vec<usize>>,
    pub nodes_expanded: u64,
}

impl RouteResult {
    pub fn is_routable(&self) -> bool {
        self.decision == Routability::Routable
    }

    pub fn witness_ids(&self, g: &IndexedGraph) -> Option<Vec<String>> {
        self.witness
            .as_ref()
            .map(|w| w.iter().map(|&v| g.id(v).to_owned()).collect())
    }
}

pub fn route_ordered(q: &OrderedQuery<'_>) -> RouteResult {
    route_ordered_limited(q, None).expect("unlimited search cannot hit a budget")
}

/// As [`route_ordered`], giving up with a budget error after `max_nodes`
/// expansions.
pub fn route_ordered_limited(q: &OrderedQuery<'_>, max_nodes: Option<u64>) -> Result<RouteResult> {
    let mut router = Router::new(q, max_nodes.unwrap_or(u64::MAX));
    let start = q.terminals[0];
    router.visited[start] = true;
    router.path.push(start);
    match router.dfs(start, 1) {
        Step::Found => Ok(RouteResult {
            decision: Routability::Routable,
            witness: Some(router.path),
            nodes_expanded: router.nodes,
        }),
        Step::Dead => Ok(RouteResult {
            decision: Routability::Unroutable,
            witness: None,
            nodes_expanded: router.nodes,
        }),
        Step::OutOfBudget => Err(SacError::Budget {
            what: "node expansion",
            required: router.nodes,
            limit: router.limit,
        }),
    }
}

enum Step {
    Found,
    Dead,
    OutOfBudget,
}

const NONE: usize = usize::MAX;

/// Entries kept in the failed-state memo.
const MEMO_CAP: usize = 1 << 20;

struct Router<'q, 'g> {
    g: &'g IndexedGraph,
    terms: &'q [usize],
    term_pos: Vec<usize>,
    visited: Vec<bool>,
    path: Vec<usize>,
    nodes: u64,
    limit: u64,
    scan: Scan,
    dead: HashSet<(usize, usize, Box<[u64]>)>,
    dist: Vec<usize>,
    queue: VecDeque<usize>,
}

impl<'q, 'g> Router<'q, 'g> {
    fn new(q: &'q OrderedQuery<'g>, limit: u64) -> Self {
        let n = q.graph.len();
        let mut term_pos = vec![NONE; n];
        for (i, &t) in q.terminals.iter().enumerate() {
            term_pos[t] = i;
        }
        Self {
            g: q.graph,
            terms: &q.terminals,
            term_pos,
            visited: vec![false; n],
            path: Vec::with_capacity(n),
            nodes: 0,
            limit,
            scan: Scan::new(n),
            dead: HashSet::new(),
            dist: vec![NONE; n],
            queue: VecDeque::new(),
        }
    }

    /// Breadth-first distances to `goal` through unused non-terminal
    /// vertices. A neighbor left at `NONE` cannot start the next segment.
    fn distances_to(&mut self, goal: usize) {
        self.dist.iter_mut().for_each(|d| *d = NONE);
        self.dist[goal] = 0;
        self.queue.clear();
        self.queue.push_back(goal);
        while let Some(u) = self.queue.pop_front() {
            if u != goal && (self.visited[u] || self.term_pos[u] != NONE) {
                continue;
            }
            for &w in self.g.neighbors(u) {
                if self.dist[w] == NONE {
                    self.dist[w] = self.dist[u] + 1;
                    self.queue.push_back(w);
                }
            }
        }
    }

    fn dfs(&mut self, cur: usize, target: usize) -> Step {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Step::OutOfBudget;
        }
        if !self.scan.feasible(self.g, &self.visited, cur, &self.terms[target..]) {
            return Step::Dead;
        }
        let live = self.scan.live_set();
        let key = (cur, target, live);
        if self.dead.contains(&key) {
            return Step::Dead;
        }
        let live = &key.2;
        let goal = self.terms[target];
        self.distances_to(goal);
        let mut next: Vec<usize> = self
            .g
            .neighbors(cur)
            .iter()
            .copied()
            .filter(|&nb| {
                !self.visited[nb]
                    && (self.term_pos[nb] == NONE || nb == goal)
                    && self.dist[nb] != NONE
                    && live[nb / 64] >> (nb % 64) & 1 == 1
            })
            .collect();
        next.sort_by_key(|&nb| (self.dist[nb], nb));
        for nb in next {
            self.visited[nb] = true;
            self.path.push(nb);
            let step = if nb == goal {
                if target + 1 == self.terms.len() {
                    return Step::Found;
                }
                self.dfs(nb, target + 1)
            } else {
                self.dfs(nb, target)
            };
            match step {
                Step::Dead => {}
                done => return done,
            }
            self.path.pop();
            self.visited[nb] = false;
        }
        if self.dead.len() < MEMO_CAP {
            self.dead.insert(key);
        }
        Step::Dead
    }
}

/// Scratch space for the feasibility check: a lowpoint DFS of the graph with
/// the used prefix deleted, rooted at the current vertex.
struct Scan {
    disc: Vec<usize>,
    low: Vec<usize>,
    parent: Vec<usize>,
    stack: Vec<(usize, usize)>,
    root_children: usize,
    events: Vec<(usize, usize, usize)>,
    /// Reached vertices in discovery order.
    order: Vec<usize>,
    holds_terminal: Vec<bool>,
    live: Vec<bool>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Up,
    At,
    Below(usize),
}

impl Scan {
    fn new(n: usize) -> Self {
        Self {
            disc: vec![NONE; n],
            low: vec![0; n],
            parent: vec![NONE; n],
            stack: Vec::with_capacity(n),
            root_children: 0,
            events: Vec::new(),
            order: Vec::with_capacity(n),
            holds_terminal: vec![false; n],
            live: vec![false; n],
        }
    }

    /// Whether `c`'s subtree is cut off from the rest by its parent.
    fn separated(&self, c: usize, root: usize) -> bool {
        let v = self.parent[c];
        v == root || self.low[c] >= self.disc[v]
    }

    /// Marks live vertices: reached, and not inside a subtree that hangs
    /// off a cut vertex without containing a remaining terminal.
    fn mark_live(&mut self, root: usize, rest: &[usize]) {
        for &v in &self.order {
            self.holds_terminal[v] = false;
            self.live[v] = false;
        }
        for &t in rest {
            let mut c = t;
            while c != NONE && !self.holds_terminal[c] {
                self.holds_terminal[c] = true;
                c = self.parent[c];
            }
        }
        self.live[root] = true;
        for i in 1..self.order.len() {
            let x = self.order[i];
            let p = self.parent[x];
            self.live[x] = self.live[p] && (self.holds_terminal[x] || !self.separated(x, root));
        }
    }

    /// The live set of the last successful [`Scan::feasible`] as a bitset.
    fn live_set(&self) -> Box<[u64]> {
        let mut bits = vec![0u64; self.live.len().div_ceil(64)];
        for &v in &self.order {
            if self.live[v] {
                bits[v / 64] |= 1 << (v % 64);
            }
        }
        bits.into_boxed_slice()
    }

    fn feasible(&mut self, g: &IndexedGraph, visited: &[bool], root: usize, rest: &[usize]) -> bool {
        self.lowpoints(g, visited, root);
        if rest.iter().any(|&t| self.disc[t] == NONE) {
            return false;
        }
        // For every terminal, the cut vertices on its tree path that separate
        // it from the root side: (cut vertex, terminal position, child).
        self.events.clear();
        let seq_len = rest.len() + 1;
        for (pos, &t) in rest.iter().enumerate() {
            let mut c = t;
            while c != root {
                let v = self.parent[c];
                let separates = if v == root {
                    self.root_children > 1
                } else {
                    self.low[c] >= self.disc[v]
                };
                if separates {
                    self.events.push((v, pos + 1, c));
                }
                c = v;
            }
        }
        self.events.sort_unstable();
        let mut sides = vec![Side::Up; seq_len];
        let mut i = 0;
        while i < self.events.len() {
            let v = self.events[i].0;
            sides.iter_mut().for_each(|s| *s = Side::Up);
            while i < self.events.len() && self.events[i].0 == v {
                let (_, pos, c) = self.events[i];
                sides[pos] = Side::Below(c);
                i += 1;
            }
            if v == root {
                sides[0] = Side::At;
            } else if let Some(p) = rest.iter().position(|&t| t == v) {
                sides[p + 1] = Side::At;
            }
            if !single_crossing(&sides) {
                return false;
            }
        }
        self.mark_live(root, rest);
        true
    }

    fn lowpoints(&mut self, g: &IndexedGraph, visited: &[bool], root: usize) {
        self.disc.iter_mut().for_each(|d| *d = NONE);
        let mut clock = 0;
        self.disc[root] = clock;
        self.low[root] = clock;
        self.parent[root] = NONE;
        clock += 1;
        self.root_children = 0;
        self.order.clear();
        self.order.push(root);
        self.stack.clear();
        self.stack.push((root, 0));
        while let Some(top) = self.stack.last_mut() {
            let (u, pos) = *top;
            if let Some(&w) = g.neighbors(u).get(pos) {
                top.1 += 1;
                if visited[w] && w != root {
                    continue;
                }
                if self.disc[w] == NONE {
                    self.disc[w] = clock;
                    self.low[w] = clock;
                    self.parent[w] = u;
                    clock += 1;
                    if u == root {
                        self.root_children += 1;
                    }
                    self.order.push(w);
                    self.stack.push((w, 0));
                } else if w != self.parent[u] {
                    self.low[u] = self.low[u].min(self.disc[w]);
                }
            } else {
                self.stack.pop();
                let p = self.parent[u];
                if p != NONE {
                    self.low[p] = self.low[p].min(self.low[u]);
                }
            }
        }
    }
}

/// A simple path crosses a cut vertex at most once, so the sides of the
/// remaining terminals change at most once, and only at the cut vertex when
/// it is itself a terminal.
fn single_crossing(sides: &[Side]) -> bool {
    if let Some(j) = sides.iter().position(|&s| s == Side::At) {
        let uniform = |part: &[Side]| part.windows(2).all(|w| w[0] == w[1]);
        return uniform(&sides[..j]) && uniform(&sides[j + 1..]);
    }
    sides.windows(2).filter(|w| w[0] != w[1]).count() <= 1
}

/// Largest graph the brute-force oracle accepts.
pub const ORACLE_LIMIT: usize = 16;

/// Exhaustive enumeration of every simple path from the first terminal,
/// accepting the first one that [`verify_route`] approves and ends at the
/// last terminal. No pruning beyond simplicity.
pub fn brute_route_oracle(q: &OrderedQuery<'_>) -> Result<RouteResult> {
    let g = q.graph;
    if g.len() > ORACLE_LIMIT {
        return Err(SacError::OracleSizeLimit {
            vertices: g.len(),
            limit: ORACLE_LIMIT,
        });
    }
    fn walk(q: &OrderedQuery<'_>, path: &mut Vec<usize>, on_path: &mut Vec<bool>, count: &mut u64) -> bool {
        *count += 1;
        let last = *path.last().unwrap();
        if last == *q.terminals.last().unwrap() && verify_route(q, path) {
            return true;
        }
        for &w in q.graph.neighbors(last) {
            if !on_path[w] {
                on_path[w] = true;
                path.push(w);
                if walk(q, path, on_path, count) {
                    return true;
                }
                path.pop();
                on_path[w] = false;
            }
        }
        false
    }
    let mut path = vec![q.terminals[0]];
    let mut on_path = vec![false; g.len()];
    on_path[q.terminals[0]] = true;
    let mut count = 0;
    let found = walk(q, &mut path, &mut on_path, &mut count);
    Ok(RouteResult {
        decision: if found {
            Routability::Routable
        } else {
            Routability::Unroutable
        },
        witness: found.then_some(path),
        nodes_expanded: count,
    })
}

/// True iff `path` is a simple path of the query graph whose terminal
/// subsequence is exactly the query's terminal order.
pub fn verify_route(q: &OrderedQuery<'_>, path: &[usize]) -> bool {
    let g = q.graph;
    if path.is_empty() || path.iter().any(|&v| v >= g.len()) {
        return false;
    }
    let mut seen = vec![false; g.len()];
    if path.iter().any(|&v| std::mem::replace(&mut seen[v], true)) {
        return false;
    }
    if !path.windows(2).all(|w| g.has_edge(w[0], w[1])) {
        return false;
    }
    let visited_terminals = path.iter().filter(|v| q.terminals.contains(v));
    visited_terminals.eq(q.terminals.iter())
}

/// [`verify_route`] on vertex ids; unknown ids make the path invalid.
pub fn verify_route_ids<S: AsRef<str>, T: AsRef<str>>(g: &IndexedGraph, terminals: &[S], path: &[T]) -> bool {
    let Ok(q) = OrderedQuery::from_ids(g, terminals) else {
        return false;
    };
    let Some(idx) = path.iter().map(|v| g.index_of(v.as_ref())).collect::<Option<Vec<_>>>() else {
        return false;
    };
    verify_route(&q, &idx)
}
