//! Finite multigraphs, their uniform subdivisions and the connectivity
//! primitives every solver in this crate is built on.
//!
//! A [`Multigraph`] is the combinatorial carrier of a topological graph: loops
//! and parallel edges are allowed. Every topological predicate is evaluated on
//! the 3-part uniform subdivision, which is always a simple graph and has a
//! homeomorphic realization.
//!
//! Algorithms run on [`IndexedGraph`], the underlying simple graph with
//! vertices indexed in ascending id order and sorted neighbor lists.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SacError};
use crate::flow;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub a: String,
    pub b: String,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.a == self.b
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Multigraph {
    vertices: BTreeSet<String>,
    edges: Vec<Edge>,
    edge_index: BTreeMap<String, usize>,
}

impl Multigraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from parts, validating every invariant.
    pub fn from_parts<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let mut g = Self::new();
        for v in vertices {
            g.add_vertex(v)?;
        }
        for (id, a, b) in edges {
            g.add_edge(id, a, b)?;
        }
        Ok(g)
    }

    /// Adds a vertex; adding an existing id is a no-op.
    pub fn add_vertex(&mut self, id: impl Into<String>) -> Result<()> {
        let id = id.into();
        if id.is_empty() {
            return Err(SacError::MalformedGraph("empty vertex id".into()));
        }
        self.vertices.insert(id);
        Ok(())
    }

    pub fn add_edge(&mut self, id: impl Into<String>, a: impl Into<String>, b: impl Into<String>) -> Result<()> {
        let (id, a, b) = (id.into(), a.into(), b.into());
        if id.is_empty() {
            return Err(SacError::MalformedGraph("empty edge id".into()));
        }
        if self.edge_index.contains_key(&id) {
            return Err(SacError::MalformedGraph(format!("duplicate edge id `{id}`")));
        }
        for end in [&a, &b] {
            if !self.vertices.contains(end) {
                return Err(SacError::MalformedGraph(format!(
                    "edge `{id}` endpoint `{end}` is not a vertex"
                )));
            }
        }
        self.edge_index.insert(id.clone(), self.edges.len());
        self.edges.push(Edge { id, a, b });
        Ok(())
    }

    pub fn vertices(&self) -> impl Iterator<Item = &str> + '_ {
        self.vertices.iter().map(String::as_str)
    }

    pub fn vertex_set(&self) -> &BTreeSet<String> {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edge_index.get(id).map(|&i| &self.edges[i])
    }

    pub fn has_vertex(&self, id: &str) -> bool {
        self.vertices.contains(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, v: &str) -> usize {
        self.edges
            .iter()
            .map(|e| (e.a == v) as usize + (e.b == v) as usize)
            .sum()
    }

    /// True when no loops and no parallel edges are present.
    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::new();
        self.edges.iter().all(|e| {
            let key = if e.a < e.b {
                (e.a.as_str(), e.b.as_str())
            } else {
                (e.b.as_str(), e.a.as_str())
            };
            !e.is_loop() && seen.insert(key)
        })
    }

    pub fn to_indexed(&self) -> IndexedGraph {
        IndexedGraph::from_multigraph(self)
    }

    pub fn is_connected(&self) -> bool {
        self.to_indexed().is_connected()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Wire form: `{"vertices":[..],"edges":[["id","a","b"], ...]}`. Two-element
/// edges are shorthand and receive the id `e<position>`. When `vertices` is
/// omitted the vertex set is inferred from the edges.
#[derive(Serialize, Deserialize)]
struct GraphJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<String>>,
    edges: Vec<Vec<String>>,
}

impl TryFrom<GraphJson> for Multigraph {
    type Error = SacError;

    fn try_from(raw: GraphJson) -> Result<Self> {
        let mut g = Multigraph::new();
        match raw.vertices {
            Some(vs) => {
                let mut seen = HashSet::new();
                for v in vs {
                    if !seen.insert(v.clone()) {
                        return Err(SacError::MalformedGraph(format!("duplicate vertex `{v}`")));
                    }
                    g.add_vertex(v)?;
                }
            }
            None => {
                for e in &raw.edges {
                    for end in e.iter().skip(if e.len() == 3 { 1 } else { 0 }) {
                        g.add_vertex(end.clone())?;
                    }
                }
            }
        }
        for (pos, e) in raw.edges.into_iter().enumerate() {
            match <[String; 3]>::try_from(e) {
                Ok([id, a, b]) => g.add_edge(id, a, b)?,
                Err(e) => match <[String; 2]>::try_from(e) {
                    Ok([a, b]) => g.add_edge(format!("e{pos}"), a, b)?,
                    Err(e) => {
                        return Err(SacError::MalformedGraph(format!(
                            "edge entry {pos} has {} fields",
                            e.len()
                        )))
                    }
                },
            }
        }
        Ok(g)
    }
}

impl From<Multigraph> for GraphJson {
    fn from(g: Multigraph) -> Self {
        GraphJson {
            vertices: Some(g.vertices.into_iter().collect()),
            edges: g.edges.into_iter().map(|e| vec![e.id, e.a, e.b]).collect(),
        }
    }
}

/// Replacement chain of one original edge: the vertex sequence from endpoint
/// `a` to endpoint `b` inclusive, and the edge ids along it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chain {
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubdivisionMap {
    chains: BTreeMap<String, Chain>,
    originals: BTreeSet<String>,
}

impl SubdivisionMap {
    pub fn chain(&self, edge_id: &str) -> Option<&Chain> {
        self.chains.get(edge_id)
    }

    pub fn chains(&self) -> impl Iterator<Item = (&str, &Chain)> {
        self.chains.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn is_original(&self, vertex: &str) -> bool {
        self.originals.contains(vertex)
    }

    /// Drops the fresh vertices of a path in the subdivided graph.
    pub fn project_path<S: AsRef<str>>(&self, path: &[S]) -> Vec<String> {
        path.iter()
            .map(AsRef::as_ref)
            .filter(|v| self.is_original(v))
            .map(str::to_owned)
            .collect()
    }
}

fn fresh(base: String, taken: &mut HashSet<String>) -> String {
    let mut id = base;
    while !taken.insert(id.clone()) {
        id.push('#');
    }
    id
}

/// Replaces every edge by a path of `parts` edges through `parts - 1` fresh
/// vertices named `<edge-id>#1`, `<edge-id>#2`, ...; chain edges are named
/// `<edge-id>/1`, ... With `parts >= 3` the result is always simple.
pub fn subdivide_uniform(g: &Multigraph, parts: usize) -> Result<(Multigraph, SubdivisionMap)> {
    if parts == 0 {
        return Err(SacError::InvalidArgument("parts must be at least 1".into()));
    }
    let mut out = Multigraph::new();
    let mut map = SubdivisionMap {
        chains: BTreeMap::new(),
        originals: g.vertices.clone(),
    };
    let mut taken_v: HashSet<String> = g.vertices.iter().cloned().collect();
    let mut taken_e: HashSet<String> = HashSet::new();
    for v in &g.vertices {
        out.add_vertex(v.clone())?;
    }
    if parts == 1 {
        for e in &g.edges {
            out.add_edge(e.id.clone(), e.a.clone(), e.b.clone())?;
            map.chains.insert(
                e.id.clone(),
                Chain {
                    vertices: vec![e.a.clone(), e.b.clone()],
                    edges: vec![e.id.clone()],
                },
            );
        }
        return Ok((out, map));
    }
    for e in &g.edges {
        let mut chain = Chain {
            vertices: vec![e.a.clone()],
            edges: Vec::with_capacity(parts),
        };
        for k in 1..parts {
            let v = fresh(format!("{}#{k}", e.id), &mut taken_v);
            out.add_vertex(v.clone())?;
            chain.vertices.push(v);
        }
        chain.vertices.push(e.b.clone());
        for k in 1..=parts {
            let id = fresh(format!("{}/{k}", e.id), &mut taken_e);
            out.add_edge(id.clone(), chain.vertices[k - 1].clone(), chain.vertices[k].clone())?;
            chain.edges.push(id);
        }
        map.chains.insert(e.id.clone(), chain);
    }
    Ok((out, map))
}

/// Underlying simple graph of a multigraph with integer vertex indices.
///
/// Neighbor lists are sorted ascending, so any search that scans them in
/// order is deterministic.
#[derive(Clone, Debug)]
pub struct IndexedGraph {
    ids: Vec<String>,
    index: OnceLock<HashMap<String, usize>>,
    adj: Vec<Vec<usize>>,
}

impl IndexedGraph {
    /// Loops are dropped and parallel edges merged.
    pub fn new(ids: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); ids.len()];
        for (u, v) in edges {
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Self::from_adjacency(ids, adj)
    }

    pub(crate) fn from_adjacency(ids: Vec<String>, adj: Vec<Vec<usize>>) -> Self {
        Self {
            ids,
            index: OnceLock::new(),
            adj,
        }
    }

    pub fn from_multigraph(g: &Multigraph) -> Self {
        let ids: Vec<String> = g.vertices.iter().cloned().collect();
        let index: HashMap<&str, usize> = ids.iter().enumerate().map(|(i, id)| (id.as_str(), i)).collect();
        let edges: Vec<(usize, usize)> = g
            .edges
            .iter()
            .map(|e| (index[e.a.as_str()], index[e.b.as_str()]))
            .collect();
        Self::new(ids, edges)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index
            .get_or_init(|| self.ids.iter().enumerate().map(|(i, id)| (id.clone(), i)).collect())
            .get(id)
            .copied()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub(crate) fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Vertices reachable from `source` once every `forbidden` vertex is
    /// deleted. `forbidden[source]` is ignored.
    pub fn reachable_mask(&self, source: usize, forbidden: &[bool]) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([source]);
        seen[source] = true;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w] && !forbidden[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Connected components, each sorted, ordered by their least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_without(&vec![false; self.len()])
    }

    /// Components of the graph with the `removed` vertices deleted.
    pub fn components_without(&self, removed: &[bool]) -> Vec<Vec<usize>> {
        let mut label = vec![usize::MAX; self.len()];
        let mut comps = Vec::new();
        for s in 0..self.len() {
            if removed[s] || label[s] != usize::MAX {
                continue;
            }
            let mask = self.reachable_mask(s, removed);
            let comp: Vec<usize> = (0..self.len()).filter(|&v| mask[v]).collect();
            for &v in &comp {
                label[v] = comps.len();
            }
            comps.push(comp);
        }
        comps
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.is_empty() || self.reachable_mask(0, &vec![false; self.len()]).iter().all(|&b| b)
    }

    /// Articulation vertices by the lowpoint method, iteratively.
    pub fn articulation_points(&self) -> Vec<bool> {
        let n = self.len();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut cut = vec![false; n];
        let mut clock = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = clock;
            low[root] = clock;
            clock += 1;
            let mut root_children = 0;
            // (vertex, parent, next neighbor position)
            let mut stack = vec![(root, usize::MAX, 0usize)];
            while let Some(&mut (u, parent, ref mut pos)) = stack.last_mut() {
                if let Some(&w) = self.adj[u].get(*pos) {
                    *pos += 1;
                    if disc[w] == usize::MAX {
                        disc[w] = clock;
                        low[w] = clock;
                        clock += 1;
                        if u == root {
                            root_children += 1;
                        }
                        stack.push((w, u, 0));
                    } else if w != parent {
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[u]);
                        if parent != root && low[u] >= disc[parent] {
                            cut[parent] = true;
                        }
                    }
                }
            }
            cut[root] = root_children > 1;
        }
        cut
    }
}

/// Articulation vertices of the underlying simple graph.
pub fn cut_vertices(g: &Multigraph) -> Result<BTreeSet<String>> {
    let ix = g.to_indexed();
    if !ix.is_connected() {
        return Err(SacError::NotConnected);
    }
    Ok(ix
        .articulation_points()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c)
        .map(|(v, _)| ix.id(v).to_owned())
        .collect())
}

/// True iff the realization has at least one edge and no topological cut
/// point, i.e. the 3-part subdivision is connected, has at least 3
/// vertices and no cut vertex.
pub fn is_topologically_2connected(g: &Multigraph) -> bool {
    if g.edge_count() == 0 {
        return false;
    }
    let (s, _) = subdivide_uniform(g, 3).expect("parts = 3 is valid");
    let ix = s.to_indexed();
    ix.len() >= 3 && ix.is_connected() && !ix.articulation_points().contains(&true)
}

pub fn reachable(g: &Multigraph, source: &str, forbidden: &BTreeSet<String>) -> Result<BTreeSet<String>> {
    let ix = g.to_indexed();
    let s = ix
        .index_of(source)
        .ok_or_else(|| SacError::UnknownVertex(source.to_owned()))?;
    if forbidden.contains(source) {
        return Err(SacError::InvalidArgument(format!("source `{source}` is forbidden")));
    }
    let mut mask = vec![false; ix.len()];
    for f in forbidden {
        if let Some(i) = ix.index_of(f) {
            mask[i] = true;
        }
    }
    let seen = ix.reachable_mask(s, &mask);
    Ok((0..ix.len())
        .filter(|&v| seen[v])
        .map(|v| ix.id(v).to_owned())
        .collect())
}

/// Finds `k` pairwise internally vertex-disjoint `u`-`v` paths, returned as
/// vertex sequences of `g`. Parallel edges count as distinct paths; the
/// search runs on the 3-part subdivision and projects back.
pub fn internally_disjoint_paths(g: &Multigraph, u: &str, v: &str, k: usize) -> Result<Option<Vec<Vec<String>>>> {
    if u == v {
        return Err(SacError::IdenticalEndpoints);
    }
    for end in [u, v] {
        if !g.has_vertex(end) {
            return Err(SacError::UnknownVertex(end.to_owned()));
        }
    }
    if k == 0 {
        return Err(SacError::InvalidArgument("k must be positive".into()));
    }
    let (s, map) = subdivide_uniform(g, 3)?;
    let ix = s.to_indexed();
    let (su, sv) = (ix.index_of(u).unwrap(), ix.index_of(v).unwrap());
    Ok(flow::vertex_disjoint_paths(&ix, su, sv, k).map(|paths| {
        paths
            .into_iter()
            .map(|p| {
                let ids: Vec<&str> = p.iter().map(|&x| ix.id(x)).collect();
                map.project_path(&ids)
            })
            .collect()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(edges: &[(&str, &str)]) -> Multigraph {
        let mut g = Multigraph::new();
        for (a, b) in edges {
            g.add_vertex(*a).unwrap();
            g.add_vertex(*b).unwrap();
        }
        for (i, (a, b)) in edges.iter().enumerate() {
            g.add_edge(format!("e{i}"), *a, *b).unwrap();
        }
        g
    }

    fn set(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn single_edge_becomes_chain() {
        let g = graph(&[("a", "b")]);
        let (s, map) = subdivide_uniform(&g, 3).unwrap();
        assert_eq!(s.vertex_count(), 4);
        assert_eq!(s.edge_count(), 3);
        assert_eq!(map.chain("e0").unwrap().vertices, ["a", "e0#1", "e0#2", "b"]);
        assert!(s.is_simple());
    }

    #[test]
    fn loop_becomes_triangle() {
        let g = graph(&[("a", "a")]);
        let (s, _) = subdivide_uniform(&g, 3).unwrap();
        assert!(s.is_simple());
        let ix = s.to_indexed();
        assert_eq!(ix.len(), 3);
        assert_eq!(ix.edge_count(), 3);
    }

    #[test]
    fn double_edge_halves_into_four_cycle() {
        let g = graph(&[("a", "b"), ("a", "b")]);
        let (s, _) = subdivide_uniform(&g, 2).unwrap();
        let ix = s.to_indexed();
        assert_eq!(ix.len(), 4);
        assert_eq!(ix.edge_count(), 4);
        assert!((0..4).all(|v| ix.neighbors(v).len() == 2));
    }

    #[test]
    fn fresh_ids_avoid_existing_vertices() {
        let mut g = graph(&[("a", "b")]);
        g.add_vertex("e0#1").unwrap();
        let (s, _) = subdivide_uniform(&g, 3).unwrap();
        assert_eq!(s.vertex_count(), 5);
        assert!(s.has_vertex("e0#1#"));
    }

    #[test]
    fn zero_parts_rejected() {
        assert!(subdivide_uniform(&graph(&[("a", "b")]), 0).is_err());
    }

    #[test]
    fn cut_vertex_examples() {
        assert_eq!(cut_vertices(&graph(&[("a", "b"), ("b", "c")])).unwrap(), set(&["b"]));
        let c4 = graph(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]);
        assert!(cut_vertices(&c4).unwrap().is_empty());
        let bowtie = graph(&[("v", "a"), ("a", "b"), ("b", "v"), ("v", "c"), ("c", "d"), ("d", "v")]);
        assert_eq!(cut_vertices(&bowtie).unwrap(), set(&["v"]));
        let split = graph(&[("a", "b"), ("c", "d")]);
        assert!(matches!(cut_vertices(&split), Err(SacError::NotConnected)));
    }

    #[test]
    fn topological_two_connectivity_examples() {
        assert!(!is_topologically_2connected(&graph(&[("a", "b")])));
        assert!(is_topologically_2connected(&graph(&[("a", "a")])));
        assert!(!is_topologically_2connected(&graph(&[("o", "o"), ("o", "o")])));
        assert!(!is_topologically_2connected(&Multigraph::new()));
        let mut lone = Multigraph::new();
        lone.add_vertex("a").unwrap();
        assert!(!is_topologically_2connected(&lone));
    }

    #[test]
    fn disjoint_path_examples() {
        let c4 = graph(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]);
        let paths = internally_disjoint_paths(&c4, "a", "c", 2).unwrap().unwrap();
        let mut got: Vec<Vec<String>> = paths;
        got.sort();
        assert_eq!(got, vec![vec!["a", "b", "c"], vec!["a", "d", "c"]]);

        let theta = graph(&[
            ("u", "p1"),
            ("p1", "w"),
            ("u", "p2"),
            ("p2", "w"),
            ("u", "p3"),
            ("p3", "w"),
        ]);
        let paths = internally_disjoint_paths(&theta, "u", "w", 3).unwrap().unwrap();
        assert_eq!(paths.len(), 3);
        let mids: BTreeSet<String> = paths.iter().map(|p| p[1].clone()).collect();
        assert_eq!(mids, set(&["p1", "p2", "p3"]));

        let path = graph(&[("a", "b"), ("b", "c")]);
        assert!(internally_disjoint_paths(&path, "a", "c", 2).unwrap().is_none());
        assert!(matches!(
            internally_disjoint_paths(&path, "a", "a", 1),
            Err(SacError::IdenticalEndpoints)
        ));
    }

    #[test]
    fn parallel_edges_are_disjoint_paths() {
        let g = graph(&[("a", "b"), ("a", "b")]);
        let paths = internally_disjoint_paths(&g, "a", "b", 2).unwrap().unwrap();
        assert_eq!(paths, vec![vec!["a", "b"], vec!["a", "b"]]);
    }

    #[test]
    fn reachable_examples() {
        let path = graph(&[("a", "b"), ("b", "c")]);
        assert_eq!(reachable(&path, "a", &set(&["b"])).unwrap(), set(&["a"]));
        let c4 = graph(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]);
        assert_eq!(reachable(&c4, "a", &set(&["b"])).unwrap(), set(&["a", "c", "d"]));
        let split = graph(&[("a", "b"), ("c", "d")]);
        assert_eq!(reachable(&split, "c", &set(&[])).unwrap(), set(&["c", "d"]));
        assert!(reachable(&split, "zz", &set(&[])).is_err());
    }

    #[test]
    fn json_shorthand_and_canonical_form() {
        let g = Multigraph::from_json(r#"{"vertices":["a","b"],"edges":[["a","b"]]}"#).unwrap();
        assert_eq!(g.edges()[0].id, "e0");
        assert_eq!(g.to_json(), r#"{"vertices":["a","b"],"edges":[["e0","a","b"]]}"#);
        let inferred = Multigraph::from_json(r#"{"edges":[["x","a","b"],["b","c"]]}"#).unwrap();
        assert_eq!(inferred.vertex_count(), 3);
        assert_eq!(inferred.edges()[1].id, "e1");
        assert!(Multigraph::from_json(r#"{"vertices":["a"],"edges":[["a","b"]]}"#).is_err());
        assert!(Multigraph::from_json(r#"{"vertices":["a","a"],"edges":[]}"#).is_err());
        assert!(Multigraph::from_json(r#"{"vertices":["a"],"edges":[["a"]]}"#).is_err());
        assert!(Multigraph::from_json(r#"{"vertices":["a","b"],"edges":[["x","a","b"],["x","a","b"]]}"#).is_err());
    }
}
