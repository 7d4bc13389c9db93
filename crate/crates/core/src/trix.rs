//! Level-m cell graphs of the N-trix.
//!
//! The root cell is the simplex on the unit barycentric vectors
//! `e_1, ..., e_N`. Child `i` of a cell with vertices `(w_1, ..., w_N)` keeps
//! `w_i` as its local vertex `i` (its external vertex) and takes the
//! midpoint `(w_i + w_j) / 2` as local vertex `j`. Vertices are exact dyadic
//! barycentric vectors in lowest terms, so deduplication and the action of
//! coordinate permutations are exact.
//!
//! # Cell-path model
//!
//! The cell graph joins every pair of vertices of each level-m cell by a
//! chord. Simplex edges survive every refinement step, so each chord is an
//! arc of the continuum and every ordered simple path in the cell graph is an
//! arc through junction vertices. Conversely two cells meet in at most one
//! vertex, so an arc whose marked points are level-m junction vertices
//! passes between cells only at shared vertices, and the pieces inside one
//! cell join disjoint pairs of its vertices, which chords reproduce.
//! An unroutable tuple therefore proves the continuum is not n-sac. A
//! routable tuple says nothing about points off the junction set.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, SacError};
use crate::graph::{IndexedGraph, Multigraph};
use crate::route::{route_ordered_limited, OrderedQuery, RouteResult};

pub const DEFAULT_CELL_BUDGET: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrixParams {
    /// Number of simplex vertices N.
    pub n: usize,
    /// Refinement level m.
    pub level: usize,
    pub cell_budget: u64,
}

impl TrixParams {
    pub fn new(n: usize, level: usize) -> Result<Self> {
        if n < 3 {
            return Err(SacError::InvalidArgument(format!("N = {n} must be at least 3")));
        }
        if level < 1 {
            return Err(SacError::InvalidArgument("level must be at least 1".into()));
        }
        Ok(Self {
            n,
            level,
            cell_budget: DEFAULT_CELL_BUDGET,
        })
    }

    pub fn with_budget(mut self, cell_budget: u64) -> Self {
        self.cell_budget = cell_budget;
        self
    }

    pub fn at_level(mut self, level: usize) -> Self {
        self.level = level;
        self
    }

    /// N^m, or `None` on overflow.
    pub fn cell_count(&self) -> Option<u64> {
        (self.n as u64).checked_pow(self.level as u32)
    }

    fn check_budget(&self) -> Result<()> {
        match self.cell_count() {
            Some(c) if c <= self.cell_budget => Ok(()),
            c => Err(SacError::Budget {
                what: "cell",
                required: c.unwrap_or(u64::MAX),
                limit: self.cell_budget,
            }),
        }
    }
}

/// A point with barycentric coordinates `num / 2^exp` in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TrixVertex {
    num: Vec<u64>,
    exp: u32,
}

impl TrixVertex {
    pub fn new(num: Vec<u64>, exp: u32) -> Result<Self> {
        if exp >= 63 {
            return Err(SacError::InvalidArgument(format!("denominator 2^{exp} too large")));
        }
        let total: u64 = num.iter().sum();
        if total != 1 << exp {
            return Err(SacError::InvalidArgument(format!(
                "numerators sum to {total}, not {}",
                1u64 << exp
            )));
        }
        let mut v = Self { num, exp };
        v.reduce();
        Ok(v)
    }

    fn reduce(&mut self) {
        while self.exp > 0 && self.num.iter().all(|x| x % 2 == 0) {
            self.num.iter_mut().for_each(|x| *x /= 2);
            self.exp -= 1;
        }
    }

    /// Unit vector `e_i`, 1-based.
    pub fn corner(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(SacError::InvalidArgument(format!("corner {i} outside 1..={n}")));
        }
        let mut num = vec![0; n];
        num[i - 1] = 1;
        Ok(Self { num, exp: 0 })
    }

    pub fn midpoint(&self, other: &Self) -> Self {
        let top = self.exp.max(other.exp);
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| (a << (top - self.exp)) + (b << (top - other.exp)))
            .collect();
        let mut v = Self { num, exp: top + 1 };
        v.reduce();
        v
    }

    pub fn numerators(&self) -> &[u64] {
        &self.num
    }

    pub fn denominator(&self) -> u64 {
        1 << self.exp
    }

    /// Denominator exponent: the first level at which this is a vertex.
    pub fn level(&self) -> u32 {
        self.exp
    }

    pub fn dim(&self) -> usize {
        self.num.len()
    }

    /// Image under the coordinate permutation sending position `k` to
    /// `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut num = vec![0; self.num.len()];
        for (k, &x) in self.num.iter().enumerate() {
            num[perm[k]] = x;
        }
        Self { num, exp: self.exp }
    }

    /// Coordinates as floats, for drawing only.
    pub fn coords_f64(&self) -> Vec<f64> {
        let d = self.denominator() as f64;
        self.num.iter().map(|&x| x as f64 / d).collect()
    }
}

/// Coarser vertices first; within a level, larger leading coordinates first,
/// so `e_1 < e_2 < ... < e_N`.
impl Ord for TrixVertex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.exp.cmp(&other.exp).then_with(|| other.num.cmp(&self.num))
    }
}

impl PartialOrd for TrixVertex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TrixVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num.iter().join(","), self.denominator())
    }
}

impl FromStr for TrixVertex {
    type Err = SacError;

    /// `n1,n2,...,nN/d` with `d` a power of two.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || SacError::Parse(format!("bad vertex `{s}`"));
        let (nums, den) = s.split_once('/').ok_or_else(bad)?;
        let den: u64 = den.trim().parse().map_err(|_| bad())?;
        if !den.is_power_of_two() {
            return Err(bad());
        }
        let num = nums
            .split([',', '.'])
            .map(|x| x.trim().parse::<u64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(num, den.trailing_zeros())
    }
}

impl Serialize for TrixVertex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TrixVertex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Cell address: digits in `1..=N`, outermost first. Empty is the root.
pub type Address = Vec<usize>;

pub fn format_address(n: usize, address: &[usize]) -> String {
    if address.is_empty() {
        ".".into()
    } else if n <= 9 {
        address.iter().join("")
    } else {
        address.iter().join("-")
    }
}

pub fn parse_address(n: usize, s: &str) -> Result<Address> {
    let bad = || SacError::Parse(format!("bad cell address `{s}`"));
    if s == "." || s.is_empty() {
        return Ok(Vec::new());
    }
    let digits: Vec<usize> = if n <= 9 && !s.contains('-') {
        s.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
            .collect::<Result<_>>()?
    } else {
        s.split('-')
            .map(|d| d.parse().map_err(|_| bad()))
            .collect::<Result<_>>()?
    };
    if digits.iter().any(|&d| d == 0 || d > n) {
        return Err(bad());
    }
    Ok(digits)
}

/// Local vertices of the cell at `address`, in local order.
pub fn cell_vertices(n: usize, address: &[usize]) -> Result<Vec<TrixVertex>> {
    let mut cell: Vec<TrixVertex> = (1..=n).map(|i| TrixVertex::corner(n, i)).collect::<Result<_>>()?;
    for &d in address {
        if d == 0 || d > n {
            return Err(SacError::InvalidArgument(format!("address digit {d} outside 1..={n}")));
        }
        cell = child_cell(&cell, d - 1);
    }
    Ok(cell)
}

fn child_cell(cell: &[TrixVertex], i: usize) -> Vec<TrixVertex> {
    (0..cell.len())
        .map(|j| {
            if j == i {
                cell[i].clone()
            } else {
                cell[i].midpoint(&cell[j])
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexSpec {
    /// 1-based corner index.
    Corner(usize),
    /// Midpoint of local vertices `i` and `j` of the cell at `address`.
    Wedge {
        address: Address,
        i: usize,
        j: usize,
    },
    Coordinates(TrixVertex),
}

impl VertexSpec {
    /// `c<i>`, `w:<address or .>:<i>:<j>`, or `p:<n1>.<n2>...<nN>/<d>`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || SacError::Parse(format!("bad tuple entry `{s}`"));
        if let Some(rest) = s.strip_prefix('c') {
            return Ok(VertexSpec::Corner(rest.parse().map_err(|_| bad())?));
        }
        if let Some(rest) = s.strip_prefix("w:") {
            let parts: Vec<&str> = rest.split(':').collect();
            let [addr, i, j] = parts[..] else {
                return Err(bad());
            };
            return Ok(VertexSpec::Wedge {
                address: parse_address(n, addr)?,
                i: i.parse().map_err(|_| bad())?,
                j: j.parse().map_err(|_| bad())?,
            });
        }
        if let Some(rest) = s.strip_prefix("p:") {
            return Ok(VertexSpec::Coordinates(rest.parse()?));
        }
        Err(bad())
    }
}

pub fn trix_vertex(n: usize, spec: &VertexSpec) -> Result<TrixVertex> {
    match spec {
        VertexSpec::Corner(i) => TrixVertex::corner(n, *i),
        VertexSpec::Wedge { address, i, j } => {
            if i == j || *i == 0 || *j == 0 || *i > n || *j > n {
                return Err(SacError::InvalidArgument(format!(
                    "wedge indices {i}, {j} must be distinct in 1..={n}"
                )));
            }
            let cell = cell_vertices(n, address)?;
            Ok(cell[i - 1].midpoint(&cell[j - 1]))
        }
        VertexSpec::Coordinates(v) => {
            if v.dim() != n {
                return Err(SacError::InvalidArgument(format!(
                    "vertex {v} has {} coordinates, expected {n}",
                    v.dim()
                )));
            }
            Ok(v.clone())
        }
    }
}

/// Parses a comma-separated tuple of [`VertexSpec`] entries.
pub fn parse_tuple(n: usize, s: &str) -> Result<TrixTuple> {
    let entries = s
        .split(',')
        .map(|e| VertexSpec::parse(n, e).and_then(|spec| trix_vertex(n, &spec)))
        .collect::<Result<Vec<_>>>()?;
    TrixTuple::new(entries)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TrixTuple(Vec<TrixVertex>);

impl TrixTuple {
    /// Entries must be distinct and share a dimension.
    pub fn new(entries: Vec<TrixVertex>) -> Result<Self> {
        if let Some(first) = entries.first() {
            if entries.iter().any(|v| v.dim() != first.dim()) {
                return Err(SacError::MalformedQuery("mixed dimensions".into()));
            }
        }
        let distinct: BTreeSet<&TrixVertex> = entries.iter().collect();
        if distinct.len() != entries.len() {
            return Err(SacError::MalformedQuery("repeated tuple entry".into()));
        }
        Ok(Self(entries))
    }

    pub fn entries(&self) -> &[TrixVertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest denominator exponent among the entries.
    pub fn level(&self) -> u32 {
        self.0.iter().map(TrixVertex::level).max().unwrap_or(0)
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self(self.0.iter().map(|v| v.permuted(perm)).collect())
    }
}

#[derive(Clone, Debug)]
pub struct TrixGraph {
    params: TrixParams,
    vertices: Vec<TrixVertex>,
    index: HashMap<TrixVertex, usize>,
    cells: Vec<(Address, Vec<usize>)>,
    /// `corners[k][c]`: vertex indices of level-k cell `c`, where the
    /// children of `c` are `c * N + i`.
    corners: Vec<Vec<Vec<usize>>>,
    /// Level-m cells containing each vertex.
    vertex_cells: Vec<Vec<usize>>,
    graph: IndexedGraph,
}

fn address_of(n: usize, level: usize, mut c: usize) -> Address {
    let mut a = vec![0; level];
    for d in a.iter_mut().rev() {
        *d = c % n + 1;
        c /= n;
    }
    a
}

pub fn trix_graph(p: &TrixParams) -> Result<TrixGraph> {
    p.check_budget()?;
    let mut levels: Vec<Vec<Vec<TrixVertex>>> = vec![vec![cell_vertices(p.n, &[])?]];
    for k in 0..p.level {
        let next = levels[k]
            .iter()
            .flat_map(|w| (0..p.n).map(move |i| child_cell(w, i)))
            .collect();
        levels.push(next);
    }
    let vertices: Vec<TrixVertex> = levels[p.level]
        .iter()
        .flat_map(|w| w.iter().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: HashMap<TrixVertex, usize> = vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    let corners: Vec<Vec<Vec<usize>>> = levels
        .into_iter()
        .map(|cells| {
            cells
                .into_iter()
                .map(|w| w.iter().map(|v| index[v]).collect())
                .collect()
        })
        .collect();
    let leaves = &corners[p.level];
    let cells: Vec<(Address, Vec<usize>)> = leaves
        .iter()
        .enumerate()
        .map(|(c, w)| (address_of(p.n, p.level, c), w.clone()))
        .collect();
    let mut vertex_cells = vec![Vec::new(); vertices.len()];
    for (c, w) in leaves.iter().enumerate() {
        for &v in w {
            vertex_cells[v].push(c);
        }
    }
    let edges: Vec<(usize, usize)> = leaves
        .iter()
        .flat_map(|w| w.iter().copied().tuple_combinations())
        .collect();
    let ids = vertices.iter().map(ToString::to_string).collect();
    Ok(TrixGraph {
        params: *p,
        graph: IndexedGraph::new(ids, edges),
        vertices,
        index,
        cells,
        corners,
        vertex_cells,
    })
}

impl TrixGraph {
    pub fn params(&self) -> &TrixParams {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.params.n
    }

    pub fn level(&self) -> usize {
        self.params.level
    }

    /// Vertices in ascending order; position is the graph index.
    pub fn vertices(&self) -> &[TrixVertex] {
        &self.vertices
    }

    pub fn vertex_index(&self, v: &TrixVertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Cells in address order with their local vertex indices.
    pub fn cells(&self) -> &[(Address, Vec<usize>)] {
        &self.cells
    }

    pub fn graph(&self) -> &IndexedGraph {
        &self.graph
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn to_multigraph(&self) -> Multigraph {
        let mut g = Multigraph::new();
        for id in self.graph.ids() {
            g.add_vertex(id.clone()).expect("vertex ids are nonempty");
        }
        for (k, (u, v)) in self.graph.edges().enumerate() {
            g.add_edge(format!("e{k}"), self.graph.id(u), self.graph.id(v))
                .expect("endpoints exist");
        }
        g
    }

    pub fn indices_of(&self, tuple: &TrixTuple) -> Result<Vec<usize>> {
        tuple
            .entries()
            .iter()
            .map(|v| {
                self.vertex_index(v).ok_or_else(|| SacError::NotJunctionVertex {
                    vertex: v.to_string(),
                    level: self.level(),
                })
            })
            .collect()
    }

    /// Routes `tuple` on the whole cell graph.
    pub fn route_full(&self, tuple: &TrixTuple) -> Result<RouteResult> {
        self.route_full_limited(tuple, None)
    }

    pub fn route_full_limited(&self, tuple: &TrixTuple, max_nodes: Option<u64>) -> Result<RouteResult> {
        let q = OrderedQuery::new(&self.graph, self.indices_of(tuple)?)?;
        route_ordered_limited(&q, max_nodes)
    }

    /// Same decision as [`route_full`](Self::route_full), usually far
    /// cheaper. The witness is a path in the cell graph.
    pub fn route(&self, tuple: &TrixTuple) -> Result<RouteResult> {
        self.route_indices(&self.indices_of(tuple)?, None)
    }

    /// Routes on a quotient: every cell, at any level, with no terminal
    /// strictly inside becomes the complete graph on its corners. Disjoint
    /// corner pairs of such a cell are joined by disjoint simplex edges, and
    /// any path crosses its interior only between corners, so the quotient
    /// has the same answer. Quotient chords are expanded back into runs of
    /// cell-graph vertices along the simplex edge.
    pub fn route_indices(&self, terminals: &[usize], max_nodes: Option<u64>) -> Result<RouteResult> {
        let (n, m) = (self.n(), self.level());
        let mut occupied: Vec<Vec<bool>> = (0..m).map(|k| vec![false; self.corners[k].len()]).collect();
        for &t in terminals {
            let cells = self
                .vertex_cells
                .get(t)
                .ok_or_else(|| SacError::MalformedQuery(format!("vertex index {t} out of range")))?;
            for &leaf in cells {
                let mut c = leaf;
                for k in (0..m).rev() {
                    c /= n;
                    if !self.corners[k][c].contains(&t) {
                        occupied[k][c] = true;
                    }
                }
            }
        }
        let mut emitted = Vec::new();
        let mut stack = vec![(0, 0)];
        while let Some((k, c)) = stack.pop() {
            if k == m || !occupied[k][c] {
                emitted.push((k, c));
            } else {
                stack.extend((0..n).rev().map(|i| (k + 1, c * n + i)));
            }
        }
        let mut adj = vec![Vec::new(); self.vertices.len()];
        let mut chord_level = HashMap::new();
        for &(k, c) in &emitted {
            for (&a, &b) in self.corners[k][c].iter().tuple_combinations() {
                adj[a].push(b);
                adj[b].push(a);
                chord_level.insert((a.min(b), a.max(b)), k);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let quotient = IndexedGraph::from_adjacency(vec![String::new(); adj.len()], adj);
        let q = OrderedQuery::new(&quotient, terminals.to_vec())?;
        let mut r = route_ordered_limited(&q, max_nodes)?;
        if let Some(w) = r.witness.take() {
            let mut path = vec![w[0]];
            for (&a, &b) in w.iter().tuple_windows() {
                let k = chord_level[&(a.min(b), a.max(b))];
                self.bisect(&self.vertices[a], &self.vertices[b], m - k, &mut path);
            }
            r.witness = Some(path);
        }
        Ok(r)
    }

    /// Appends the vertices after `a` up to `b` on the simplex edge `ab`
    /// split into `2^depth` pieces.
    fn bisect(&self, a: &TrixVertex, b: &TrixVertex, depth: usize, out: &mut Vec<usize>) {
        if depth == 0 {
            out.push(self.index[b]);
        } else {
            let mid = a.midpoint(b);
            self.bisect(a, &mid, depth - 1, out);
            self.bisect(&mid, b, depth - 1, out);
        }
    }

    pub fn tuple_of(&self, indices: &[usize]) -> TrixTuple {
        TrixTuple(indices.iter().map(|&i| self.vertices[i].clone()).collect())
    }
}

#[derive(Clone, Debug)]
pub struct TrixRoute {
    pub level: usize,
    pub result: RouteResult,
    pub witness: Option<Vec<TrixVertex>>,
}

/// Routes a tuple on the cell graph at `max(p.level, tuple level)`.
pub fn trix_route(p: &TrixParams, tuple: &TrixTuple) -> Result<TrixRoute> {
    trix_route_limited(p, tuple, None)
}

/// As [`trix_route`], with a budget error after `max_nodes` expansions.
pub fn trix_route_limited(p: &TrixParams, tuple: &TrixTuple, max_nodes: Option<u64>) -> Result<TrixRoute> {
    if tuple.entries().iter().any(|v| v.dim() != p.n) {
        return Err(SacError::MalformedQuery(format!(
            "entries must have {} coordinates",
            p.n
        )));
    }
    let level = p.level.max(tuple.level() as usize);
    let graph = trix_graph(&p.at_level(level))?;
    let result = graph.route_indices(&graph.indices_of(tuple)?, max_nodes)?;
    let witness = result
        .witness
        .as_ref()
        .map(|w| w.iter().map(|&i| graph.vertices[i].clone()).collect());
    Ok(TrixRoute { level, result, witness })
}

/// Lexicographically least image of `tuple` under all coordinate
/// permutations. Routability is invariant under this action.
pub fn canonical_tuple(n: usize, tuple: &TrixTuple) -> TrixTuple {
    (0..n)
        .permutations(n)
        .map(|perm| tuple.permuted(&perm))
        .min()
        .unwrap_or_else(|| tuple.clone())
}
