//! Combinatorial types of n-point tuples in a graph realization.
//!
//! A marked point sits either on a vertex or inside an edge. Inside an edge
//! only the order of the points along the edge matters (a homeomorphism
//! fixing the vertices moves any positions with the same order onto each
//! other), so a placement records a rank per edge point, counted from the
//! edge's first endpoint.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Result, SacError};
use crate::graph::{IndexedGraph, Multigraph};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MarkedPoint {
    Vertex { vertex: String },
    Edge { edge: String, rank: u32 },
}

impl MarkedPoint {
    pub fn vertex(id: impl Into<String>) -> Self {
        MarkedPoint::Vertex { vertex: id.into() }
    }

    pub fn edge(id: impl Into<String>, rank: u32) -> Self {
        MarkedPoint::Edge { edge: id.into(), rank }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Placement {
    pub points: Vec<MarkedPoint>,
}

impl Placement {
    pub fn new(points: Vec<MarkedPoint>) -> Self {
        Self { points }
    }

    pub fn from_vertices<S: AsRef<str>>(ids: &[S]) -> Self {
        Self::new(ids.iter().map(|v| MarkedPoint::vertex(v.as_ref())).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Checks hosts exist, vertex hosts are distinct and each edge's ranks
    /// are exactly `1..=k`.
    pub fn validate(&self, g: &Multigraph) -> Result<()> {
        if self.points.len() < 2 {
            return Err(SacError::MalformedPlacement("need at least two points".into()));
        }
        let mut vertices = HashSet::new();
        let mut ranks: BTreeMap<&str, Vec<u32>> = BTreeMap::new();
        for p in &self.points {
            match p {
                MarkedPoint::Vertex { vertex } => {
                    if !g.has_vertex(vertex) {
                        return Err(SacError::MalformedPlacement(format!("unknown vertex `{vertex}`")));
                    }
                    if !vertices.insert(vertex.as_str()) {
                        return Err(SacError::MalformedPlacement(format!(
                            "vertex `{vertex}` hosts two points"
                        )));
                    }
                }
                MarkedPoint::Edge { edge, rank } => {
                    if g.edge(edge).is_none() {
                        return Err(SacError::MalformedPlacement(format!("unknown edge `{edge}`")));
                    }
                    ranks.entry(edge).or_default().push(*rank);
                }
            }
        }
        for (edge, mut rs) in ranks {
            rs.sort_unstable();
            if !rs.iter().copied().eq(1..=rs.len() as u32) {
                return Err(SacError::MalformedPlacement(format!(
                    "ranks on edge `{edge}` are not 1..{}",
                    rs.len()
                )));
            }
        }
        Ok(())
    }
}

fn fresh(base: String, taken: &mut HashSet<String>) -> String {
    let mut id = base;
    while !taken.insert(id.clone()) {
        id.push('\'');
    }
    id
}

/// Subdivides every edge hosting `k` points into `k + 1` parts, with marked
/// vertices `<edge-id>@<rank>` in rank order from the edge's first endpoint.
/// Returns the new graph and the marked vertices in point order.
pub fn realize_placement(g: &Multigraph, p: &Placement) -> Result<(Multigraph, Vec<String>)> {
    p.validate(g)?;
    let mut on_edge: BTreeMap<&str, Vec<(u32, usize)>> = BTreeMap::new();
    for (i, pt) in p.points.iter().enumerate() {
        if let MarkedPoint::Edge { edge, rank } = pt {
            on_edge.entry(edge).or_default().push((*rank, i));
        }
    }
    let mut terminals = vec![String::new(); p.len()];
    for (i, pt) in p.points.iter().enumerate() {
        if let MarkedPoint::Vertex { vertex } = pt {
            terminals[i] = vertex.clone();
        }
    }
    let mut taken_v: HashSet<String> = g.vertices().map(str::to_owned).collect();
    let mut taken_e: HashSet<String> = g.edges().iter().map(|e| e.id.clone()).collect();
    let mut out = Multigraph::new();
    for v in g.vertices() {
        out.add_vertex(v)?;
    }
    for e in g.edges() {
        let Some(points) = on_edge.get_mut(e.id.as_str()) else {
            out.add_edge(e.id.clone(), e.a.clone(), e.b.clone())?;
            continue;
        };
        taken_e.remove(&e.id);
        points.sort_unstable();
        let mut chain = vec![e.a.clone()];
        for &(rank, point) in points.iter() {
            let m = fresh(format!("{}@{rank}", e.id), &mut taken_v);
            out.add_vertex(m.clone())?;
            terminals[point] = m.clone();
            chain.push(m);
        }
        chain.push(e.b.clone());
        for (k, pair) in chain.windows(2).enumerate() {
            let id = fresh(format!("{}:{k}", e.id), &mut taken_e);
            out.add_edge(id, pair[0].clone(), pair[1].clone())?;
        }
    }
    Ok((out, terminals))
}

/// Where a point sits in a [`PlacementBase`]: a vertex index or an edge
/// index, with its rank (0 for vertices).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct RawPoint {
    pub host: usize,
    pub rank: u32,
}

/// Index form of a simple graph for fast placement enumeration and
/// realization. Host `h < V` is vertex `h`; host `V + e` is edge `e`.
pub(crate) struct PlacementBase<'g> {
    pub source: &'g Multigraph,
    pub graph: IndexedGraph,
    pub edges: Vec<(usize, usize)>,
}

impl<'g> PlacementBase<'g> {
    pub fn new(g: &'g Multigraph) -> Result<Self> {
        if !g.is_simple() {
            return Err(SacError::InvalidArgument(
                "placements need a simple graph; subdivide first".into(),
            ));
        }
        let graph = g.to_indexed();
        let edges = g
            .edges()
            .iter()
            .map(|e| (graph.index_of(&e.a).unwrap(), graph.index_of(&e.b).unwrap()))
            .collect();
        Ok(Self {
            source: g,
            graph,
            edges,
        })
    }

    pub fn host_count(&self) -> usize {
        self.graph.len() + self.edges.len()
    }

    pub fn to_placement(&self, raw: &[RawPoint]) -> Placement {
        let v = self.graph.len();
        Placement::new(
            raw.iter()
                .map(|p| {
                    if p.host < v {
                        MarkedPoint::vertex(self.graph.id(p.host))
                    } else {
                        MarkedPoint::edge(self.source.edges()[p.host - v].id.clone(), p.rank)
                    }
                })
                .collect(),
        )
    }

    /// Realization as an index graph: marked edge points become fresh
    /// vertices numbered after the original ones. Returns the terminals.
    pub fn realize(&self, raw: &[RawPoint]) -> (IndexedGraph, Vec<usize>) {
        let v = self.graph.len();
        let mut adj = self.graph.adjacency().to_vec();
        let mut ids = self.graph.ids().to_vec();
        let mut terminals = vec![0; raw.len()];
        let mut hosted: Vec<(usize, u32, usize)> = Vec::new();
        for (i, p) in raw.iter().enumerate() {
            if p.host < v {
                terminals[i] = p.host;
            } else {
                hosted.push((p.host - v, p.rank, i));
            }
        }
        hosted.sort_unstable();
        let mut k = 0;
        while k < hosted.len() {
            let e = hosted[k].0;
            let (a, b) = self.edges[e];
            adj[a].retain(|&x| x != b);
            adj[b].retain(|&x| x != a);
            let mut prev = a;
            while k < hosted.len() && hosted[k].0 == e {
                let (_, rank, point) = hosted[k];
                let m = adj.len();
                ids.push(format!("{}@{rank}", self.source.edges()[e].id));
                adj.push(vec![prev]);
                adj[prev].push(m);
                terminals[point] = m;
                prev = m;
                k += 1;
            }
            adj[prev].push(b);
            adj[b].push(prev);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        (IndexedGraph::from_adjacency(ids, adj), terminals)
    }
}

/// Every placement of `n` points in deterministic order: host assignments
/// lexicographically (vertices before edges, point 1 most significant), and
/// for each assignment every rank order on each shared edge.
pub(crate) struct RawPlacements {
    vertices: usize,
    hosts: usize,
    assignment: Vec<usize>,
    started: bool,
    done: bool,
    pending: Vec<Vec<RawPoint>>,
}

impl RawPlacements {
    pub fn new(base: &PlacementBase<'_>, n: usize) -> Self {
        Self {
            vertices: base.graph.len(),
            hosts: base.host_count(),
            assignment: vec![0; n],
            started: false,
            done: base.host_count() == 0,
            pending: Vec::new(),
        }
    }

    fn step_assignment(&mut self) -> bool {
        let h = self.hosts;
        for i in (0..self.assignment.len()).rev() {
            self.assignment[i] += 1;
            if self.assignment[i] < h {
                return true;
            }
            self.assignment[i] = 0;
        }
        false
    }

    fn valid_assignment(&self) -> bool {
        let v = self.vertices;
        let a = &self.assignment;
        (0..a.len()).all(|i| a[i] >= v || !a[..i].contains(&a[i]))
    }

    fn expand(&mut self) {
        let v = self.vertices;
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &h) in self.assignment.iter().enumerate() {
            if h >= v {
                groups.entry(h).or_default().push(i);
            }
        }
        let base: Vec<RawPoint> = self.assignment.iter().map(|&host| RawPoint { host, rank: 0 }).collect();
        let mut out = vec![base];
        for members in groups.values() {
            let mut next = Vec::new();
            for partial in &out {
                for order in permutations(members.len()) {
                    let mut p = partial.clone();
                    for (slot, &point) in members.iter().enumerate() {
                        p[point].rank = order[slot] as u32 + 1;
                    }
                    next.push(p);
                }
            }
            out = next;
        }
        out.reverse();
        self.pending = out;
    }
}

impl Iterator for RawPlacements {
    type Item = Vec<RawPoint>;

    fn next(&mut self) -> Option<Vec<RawPoint>> {
        loop {
            if let Some(p) = self.pending.pop() {
                return Some(p);
            }
            if self.done {
                return None;
            }
            if self.started && !self.step_assignment() {
                self.done = true;
                return None;
            }
            self.started = true;
            if self.valid_assignment() {
                self.expand();
            }
        }
    }
}

/// All permutations of `0..k` in lexicographic order.
fn permutations(k: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..k).permutations(k).collect()
}

/// Streams every placement of `n` points on a simple graph (normalize with
/// `subdivide_uniform(g, 3)` first). Rank reversals on an edge are emitted
/// as distinct placements.
pub fn enumerate_placements(g: &Multigraph, n: usize) -> Result<impl Iterator<Item = Placement> + '_> {
    if n < 2 {
        return Err(SacError::InvalidArgument("n must be at least 2".into()));
    }
    let base = PlacementBase::new(g)?;
    let raws = RawPlacements::new(&base, n);
    Ok(raws.map(move |r| base.to_placement(&r)))
}
