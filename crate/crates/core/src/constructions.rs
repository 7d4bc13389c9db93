//! Graph constructors: finite gluing, circle/theta witnesses through three
//! points, named graphs and seeded random graphs.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SacError};
use crate::flow::vertex_disjoint_paths;
use crate::graph::{internally_disjoint_paths, is_topologically_2connected, IndexedGraph, Multigraph};
use crate::placement::{realize_placement, MarkedPoint, Placement};
use crate::sac::normalize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlueSpec {
    pub left: Multigraph,
    pub right: Multigraph,
    /// (left vertex, right vertex) pairs to identify.
    pub pairs: Vec<(String, String)>,
}

/// Disjoint union with each pair identified. Unpaired vertices and all edges
/// are renamed `L.<id>` / `R.<id>`; the k-th pair becomes `G<k>`, from 1.
pub fn glue(spec: &GlueSpec) -> Result<Multigraph> {
    if spec.pairs.is_empty() {
        return Err(SacError::InvalidArgument("no glue pairs".into()));
    }
    let mut left = BTreeMap::new();
    let mut right = BTreeMap::new();
    for (k, (l, r)) in spec.pairs.iter().enumerate() {
        for (side, g, v) in [(&mut left, &spec.left, l), (&mut right, &spec.right, r)] {
            if !g.has_vertex(v) {
                return Err(SacError::UnknownVertex(v.clone()));
            }
            if side.insert(v.as_str(), format!("G{}", k + 1)).is_some() {
                return Err(SacError::InvalidArgument(format!("vertex `{v}` glued twice")));
            }
        }
    }
    let mut out = Multigraph::new();
    for (prefix, g, map) in [("L", &spec.left, &left), ("R", &spec.right, &right)] {
        let name = |v: &str| map.get(v).cloned().unwrap_or_else(|| format!("{prefix}.{v}"));
        for v in g.vertices() {
            out.add_vertex(name(v))?;
        }
        for e in g.edges() {
            out.add_edge(format!("{prefix}.{}", e.id), name(&e.a), name(&e.b))?;
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    Circle,
    Theta,
}

/// A circle or theta subgraph of `host` through the three `marked`
/// vertices. `host` realizes the three input points as vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreePointWitness {
    pub kind: WitnessKind,
    pub host: Multigraph,
    pub subgraph: Multigraph,
    pub marked: Vec<String>,
}

/// Expansion cap for the shortest-circle search.
const CIRCLE_SEARCH_LIMIT: u64 = 1_000_000;

/// Finds a circle through the three points if one exists (the shortest, when
/// the search finishes within its cap), and otherwise a theta built from a
/// cycle through `x`, `y` and two disjoint paths from `z` to it.
pub fn theta_or_circle_witness(
    g: &Multigraph,
    x: &MarkedPoint,
    y: &MarkedPoint,
    z: &MarkedPoint,
) -> Result<ThreePointWitness> {
    if !is_topologically_2connected(g) {
        return Err(SacError::NoWitnessGuaranteed("graph has a cut point".into()));
    }
    let placement = Placement::new(vec![x.clone(), y.clone(), z.clone()]);
    let (realized, marked) = realize_placement(g, &placement)?;
    let host = if realized.is_simple() {
        realized
    } else {
        normalize(&realized)
    };
    let ix = host.to_indexed();
    let t: Vec<usize> = marked
        .iter()
        .map(|m| ix.index_of(m).expect("marked vertex exists"))
        .collect();

    let (kind, walks) = match shortest_circle(&ix, t[0], &t[1..]) {
        Some(cycle) => (WitnessKind::Circle, vec![closed(cycle)]),
        None => theta_walks(&ix, t[0], t[1], t[2])?,
    };
    let subgraph = subgraph_of(&host, &ix, &walks)?;
    let w = ThreePointWitness {
        kind,
        host,
        subgraph,
        marked,
    };
    debug_assert!(check_witness(&w));
    Ok(w)
}

fn closed(mut cycle: Vec<usize>) -> Vec<usize> {
    cycle.push(cycle[0]);
    cycle
}

/// Shortest simple cycle through `x` and every vertex of `others`, by
/// branch and bound. `None` when there is none or the cap was hit first
/// without a candidate.
fn shortest_circle(ix: &IndexedGraph, x: usize, others: &[usize]) -> Option<Vec<usize>> {
    let dist = bfs_dist(ix, x);
    let mut s = CircleSearch {
        ix,
        x,
        dist,
        wanted: others.to_vec(),
        path: vec![x],
        on_path: vec![false; ix.len()],
        best: None,
        budget: CIRCLE_SEARCH_LIMIT,
    };
    s.on_path[x] = true;
    s.dfs(x);
    s.best
}

struct CircleSearch<'a> {
    ix: &'a IndexedGraph,
    x: usize,
    dist: Vec<usize>,
    wanted: Vec<usize>,
    path: Vec<usize>,
    on_path: Vec<bool>,
    best: Option<Vec<usize>>,
    budget: u64,
}

impl CircleSearch<'_> {
    fn dfs(&mut self, cur: usize) {
        if self.budget == 0 {
            return;
        }
        self.budget -= 1;
        let bound = self.best.as_ref().map_or(usize::MAX, Vec::len);
        if self.path.len() + self.dist[cur] > bound {
            return;
        }
        if self.path.len() >= 3 && self.ix.has_edge(cur, self.x) && self.wanted.iter().all(|&w| self.on_path[w]) {
            self.best = Some(self.path.clone());
            return;
        }
        for &next in self.ix.neighbors(cur) {
            if self.on_path[next] {
                continue;
            }
            self.on_path[next] = true;
            self.path.push(next);
            self.dfs(next);
            self.path.pop();
            self.on_path[next] = false;
        }
    }
}

fn bfs_dist(ix: &IndexedGraph, s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX / 2; ix.len()];
    dist[s] = 0;
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &v in ix.neighbors(u) {
            if dist[v] > dist[u] + 1 {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Cycle C through x and y from two disjoint x-y paths; then z joins C by
/// two disjoint paths ending at distinct first hits a != b. The paths
/// toward x are tried first; when they first meet C at the same vertex, a
/// fan from z to all of C is used instead.
fn theta_walks(ix: &IndexedGraph, x: usize, y: usize, z: usize) -> Result<(WitnessKind, Vec<Vec<usize>>)> {
    let no_witness = || SacError::NoWitnessGuaranteed("disjoint paths not found".into());
    let xy = vertex_disjoint_paths(ix, x, y, 2).ok_or_else(no_witness)?;
    let mut cycle = xy[0].clone();
    cycle.extend(xy[1].iter().rev().skip(1));
    let on_cycle: HashSet<usize> = cycle.iter().copied().collect();
    if on_cycle.contains(&z) {
        return Ok((WitnessKind::Circle, vec![cycle]));
    }
    let cut = |p: &[usize]| -> Vec<usize> {
        let end = p
            .iter()
            .position(|v| on_cycle.contains(v))
            .expect("path reaches the cycle");
        p[..=end].to_vec()
    };
    let zx = vertex_disjoint_paths(ix, z, x, 2).ok_or_else(no_witness)?;
    let (mut alpha, mut beta) = (cut(&zx[0]), cut(&zx[1]));
    if alpha.last() == beta.last() {
        let sink = ix.len();
        let mut ids = ix.ids().to_vec();
        ids.push(String::new());
        let edges = ix.edges().chain(cycle.iter().map(|&c| (c, sink)));
        let fan_graph = IndexedGraph::new(ids, edges);
        let fan = vertex_disjoint_paths(&fan_graph, z, sink, 2).ok_or_else(no_witness)?;
        alpha = cut(&fan[0]);
        beta = cut(&fan[1]);
    }
    Ok((WitnessKind::Theta, vec![cycle, alpha, beta]))
}

fn subgraph_of(host: &Multigraph, ix: &IndexedGraph, walks: &[Vec<usize>]) -> Result<Multigraph> {
    let key = |a: &str, b: &str| {
        if a <= b {
            (a.to_owned(), b.to_owned())
        } else {
            (b.to_owned(), a.to_owned())
        }
    };
    let mut by_ends: BTreeMap<(String, String), &crate::graph::Edge> = BTreeMap::new();
    for e in host.edges() {
        by_ends.entry(key(&e.a, &e.b)).or_insert(e);
    }
    let mut vertices = BTreeSet::new();
    let mut edges = BTreeMap::new();
    for walk in walks {
        for pair in walk.windows(2) {
            let e = by_ends[&key(ix.id(pair[0]), ix.id(pair[1]))];
            vertices.insert(e.a.clone());
            vertices.insert(e.b.clone());
            edges.insert(e.id.clone(), (e.a.clone(), e.b.clone()));
        }
    }
    Multigraph::from_parts(vertices, edges.into_iter().map(|(id, (a, b))| (id, a, b)))
}

/// Checks the witness invariants: the subgraph sits in the host, contains
/// the marked points, and is a circle (connected, all degrees 2) or a theta
/// (two degree-3 poles joined by three internally disjoint paths, all other
/// degrees 2).
pub fn check_witness(w: &ThreePointWitness) -> bool {
    let s = &w.subgraph;
    let in_host = s.vertices().all(|v| w.host.has_vertex(v))
        && s.edges().iter().all(|e| {
            w.host
                .edge(&e.id)
                .is_some_and(|h| (h.a == e.a && h.b == e.b) || (h.a == e.b && h.b == e.a))
        });
    if !in_host || w.marked.len() != 3 || !w.marked.iter().all(|m| s.has_vertex(m)) {
        return false;
    }
    if s.edge_count() == 0 || !s.is_connected() {
        return false;
    }
    let mut poles = Vec::new();
    for v in s.vertices() {
        match s.degree(v) {
            2 => {}
            3 => poles.push(v),
            _ => return false,
        }
    }
    match (w.kind, &poles[..]) {
        (WitnessKind::Circle, []) => true,
        (WitnessKind::Theta, &[p, q]) => {
            matches!(internally_disjoint_paths(s, p, q, 3), Ok(Some(_)))
        }
        _ => false,
    }
}

/// Names: `triod`, `figure8`, `theta`, `cycle(k)`, `complete(k)`,
/// `path(k)`, `two_triangles_shared_vertex`, `petersen`, `loop`, `K2`.
///
/// Vertex ids: triod `o,x,y,z` (center `o`); figure8 `o`; theta poles
/// `u,w` and midpoints `p1,p2,p3`; cycles and paths `a,b,c,...` (or
/// `v1..vk` beyond 26); complete graphs `1..k`; the shared-vertex triangles
/// `v,x1,x2` and `v,y1,y2`; petersen `0..9` with outer cycle `0..4` and
/// spokes `i-(i+5)`; loop `a`; K2 `a,b`. Edge ids are `e0, e1, ...` in
/// construction order.
pub fn named_graph(name: &str) -> Result<Multigraph> {
    let unknown = || SacError::UnknownGraph(name.to_owned());
    let (base, arg) = match name.split_once('(') {
        Some((b, rest)) => {
            let k: usize = rest
                .strip_suffix(')')
                .and_then(|k| k.trim().parse().ok())
                .ok_or_else(unknown)?;
            (b, Some(k))
        }
        None => (name, None),
    };
    let pairs: Vec<(String, String)> = match (base, arg) {
        ("triod", None) => pairs_of(&[("o", "x"), ("o", "y"), ("o", "z")]),
        ("figure8", None) => pairs_of(&[("o", "o"), ("o", "o")]),
        ("theta", None) => (1..=3)
            .flat_map(|i| [("u".to_owned(), format!("p{i}")), (format!("p{i}"), "w".to_owned())])
            .collect(),
        ("loop", None) => pairs_of(&[("a", "a")]),
        ("K2", None) => pairs_of(&[("a", "b")]),
        ("two_triangles_shared_vertex", None) => pairs_of(&[
            ("v", "x1"),
            ("x1", "x2"),
            ("x2", "v"),
            ("v", "y1"),
            ("y1", "y2"),
            ("y2", "v"),
        ]),
        ("petersen", None) => (0..5)
            .flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (i + 5, (i + 2) % 5 + 5)])
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
        ("cycle", Some(k)) if k >= 1 => {
            let ids = letters(k);
            (0..k).map(|i| (ids[i].clone(), ids[(i + 1) % k].clone())).collect()
        }
        ("path", Some(k)) if k >= 1 => {
            let ids = letters(k);
            if k == 1 {
                let mut g = Multigraph::new();
                g.add_vertex(ids[0].clone())?;
                return Ok(g);
            }
            ids.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect()
        }
        ("complete", Some(k)) if k >= 1 => {
            if k == 1 {
                let mut g = Multigraph::new();
                g.add_vertex("1")?;
                return Ok(g);
            }
            (1..=k)
                .flat_map(|a| (a + 1..=k).map(move |b| (a.to_string(), b.to_string())))
                .collect()
        }
        _ => return Err(unknown()),
    };
    from_pairs(pairs)
}

fn pairs_of(p: &[(&str, &str)]) -> Vec<(String, String)> {
    p.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

fn letters(k: usize) -> Vec<String> {
    if k <= 26 {
        (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (1..=k).map(|i| format!("v{i}")).collect()
    }
}

fn from_pairs(pairs: Vec<(String, String)>) -> Result<Multigraph> {
    let vertices: Vec<String> = pairs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
    Multigraph::from_parts(
        vertices,
        pairs.into_iter().enumerate().map(|(i, (a, b))| (format!("e{i}"), a, b)),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Requirement {
    None,
    Connected,
    TwoConnected,
}

impl std::str::FromStr for Requirement {
    type Err = SacError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Requirement::None),
            "connected" => Ok(Requirement::Connected),
            "two_connected" => Ok(Requirement::TwoConnected),
            _ => Err(SacError::Parse(format!("unknown requirement `{s}`"))),
        }
    }
}

pub const RANDOM_ATTEMPTS: usize = 10_000;

/// Simple graph on vertices `v0..v{n-1}` with `edges` distinct edges,
/// deterministic in `seed`. Connected draws grow a random spanning tree
/// first; two-connected draws retry connected ones up to
/// [`RANDOM_ATTEMPTS`] times.
pub fn random_graph(seed: u64, vertices: usize, edges: usize, require: Requirement) -> Result<Multigraph> {
    let slots = vertices * vertices.saturating_sub(1) / 2;
    let infeasible = |why: &str| {
        Err(SacError::Infeasible(format!(
            "{vertices} vertices, {edges} edges: {why}"
        )))
    };
    if edges > slots {
        return infeasible("more edges than vertex pairs");
    }
    match require {
        Requirement::Connected if vertices == 0 || edges + 1 < vertices => {
            return infeasible("too few edges to connect")
        }
        Requirement::TwoConnected if vertices < 3 || edges < vertices => {
            return infeasible("too few edges for a cycle through every vertex")
        }
        _ => {}
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_ATTEMPTS {
        let chosen = draw_edges(&mut rng, vertices, edges, require != Requirement::None);
        let ids: Vec<String> = (0..vertices).map(|i| format!("v{i}")).collect();
        let g = Multigraph::from_parts(
            ids.clone(),
            chosen
                .into_iter()
                .enumerate()
                .map(|(k, (a, b))| (format!("e{k}"), ids[a].clone(), ids[b].clone())),
        )?;
        if require != Requirement::TwoConnected || is_topologically_2connected(&g) {
            return Ok(g);
        }
    }
    infeasible("no draw met the requirement within the attempt bound")
}

fn draw_edges(rng: &mut ChaCha8Rng, n: usize, m: usize, spanning: bool) -> Vec<(usize, usize)> {
    let mut chosen: BTreeSet<(usize, usize)> = BTreeSet::new();
    if spanning {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        for i in 1..n {
            let j = order[rng.gen_range(0..i)];
            let (a, b) = (order[i].min(j), order[i].max(j));
            chosen.insert((a, b));
        }
    }
    let mut rest: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|e| !chosen.contains(e))
        .collect();
    rest.shuffle(rng);
    chosen.extend(rest.into_iter().take(m - chosen.len()));
    chosen.into_iter().collect()
}

/// Every named graph (with small parameters) followed by seeded random
/// connected graphs, `(label, graph)`. All have at most 10 vertices.
pub fn standard_corpus(random: usize, seed: u64) -> Vec<(String, Multigraph)> {
    let mut names: Vec<String> = [
        "triod",
        "figure8",
        "theta",
        "two_triangles_shared_vertex",
        "petersen",
        "loop",
        "K2",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    names.extend((1..=6).map(|k| format!("cycle({k})")));
    names.extend((2..=5).map(|k| format!("complete({k})")));
    names.extend((2..=5).map(|k| format!("path({k})")));
    let mut out: Vec<(String, Multigraph)> = names
        .into_iter()
        .map(|n| {
            let g = named_graph(&n).expect("known name");
            (n, g)
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..random {
        let v = rng.gen_range(3..=8);
        let slots = v * (v - 1) / 2;
        let e = rng.gen_range(v - 1..=slots.min(v + 4));
        let require = if i % 3 == 0 && e >= v {
            Requirement::TwoConnected
        } else {
            Requirement::Connected
        };
        let s = rng.gen();
        let g = random_graph(s, v, e, require).or_else(|_| random_graph(s, v, e, Requirement::Connected));
        out.push((
            format!("random(seed={s},v={v},e={e})"),
            g.expect("connected draws are feasible"),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cut_vertices;
    use crate::sac::{placement_is_unroutable, refute_via_cutset, sac_number};

    fn g(name: &str) -> Multigraph {
        named_graph(name).unwrap()
    }

    fn v(id: &str) -> MarkedPoint {
        MarkedPoint::vertex(id)
    }

    #[test]
    fn glue_two_k4() {
        let spec = GlueSpec {
            left: g("complete(4)"),
            right: g("complete(4)"),
            pairs: vec![("1".into(), "1".into())],
        };
        let out = glue(&spec).unwrap();
        assert_eq!(out.vertex_count(), 7);
        assert_eq!(cut_vertices(&out).unwrap().into_iter().collect::<Vec<_>>(), ["G1"]);
        assert_eq!(sac_number(&out).value, 2);
    }

    #[test]
    fn glue_loops_is_figure_eight() {
        let spec = GlueSpec {
            left: g("loop"),
            right: g("loop"),
            pairs: vec![("a".into(), "a".into())],
        };
        let out = glue(&spec).unwrap();
        assert_eq!(out.vertex_count(), 1);
        assert_eq!(out.edge_count(), 2);
        assert_eq!(sac_number(&out).value, 2);
    }

    #[test]
    fn glue_cycles_on_an_edge() {
        let spec = GlueSpec {
            left: g("cycle(4)"),
            right: g("cycle(4)"),
            pairs: vec![("a".into(), "a".into()), ("b".into(), "b".into())],
        };
        let out = glue(&spec).unwrap();
        assert_eq!(out.vertex_count(), 6);
        assert_eq!(out.edge_count(), 8);
        assert!(out.has_vertex("G2") && out.has_vertex("L.c") && out.has_vertex("R.d"));
        let f: BTreeSet<String> = ["G1".to_string(), "G2".to_string()].into();
        let p = refute_via_cutset(&out, &f).unwrap();
        assert_eq!(p.len(), 4);
        assert!(placement_is_unroutable(&out, &p).unwrap());
    }

    #[test]
    fn glue_rejects_bad_specs() {
        let base = GlueSpec {
            left: g("cycle(3)"),
            right: g("cycle(3)"),
            pairs: vec![],
        };
        assert!(glue(&base).is_err());
        let twice = GlueSpec {
            pairs: vec![("a".into(), "a".into()), ("a".into(), "b".into())],
            ..base.clone()
        };
        assert!(glue(&twice).is_err());
        let missing = GlueSpec {
            pairs: vec![("q".into(), "a".into())],
            ..base
        };
        assert!(matches!(glue(&missing), Err(SacError::UnknownVertex(_))));
    }

    #[test]
    fn triangle_witness_is_the_triangle() {
        let w = theta_or_circle_witness(&g("cycle(3)"), &v("a"), &v("b"), &v("c")).unwrap();
        assert_eq!(w.kind, WitnessKind::Circle);
        assert_eq!(w.subgraph, g("cycle(3)"));
        assert!(check_witness(&w));
    }

    #[test]
    fn theta_witness_is_whole_theta() {
        let w = theta_or_circle_witness(&g("theta"), &v("p1"), &v("p2"), &v("p3")).unwrap();
        assert_eq!(w.kind, WitnessKind::Theta);
        assert_eq!(w.subgraph, g("theta"));
        assert!(check_witness(&w));
    }

    #[test]
    fn k4_witness_is_a_triangle() {
        let w = theta_or_circle_witness(&g("complete(4)"), &v("1"), &v("2"), &v("3")).unwrap();
        assert_eq!(w.kind, WitnessKind::Circle);
        let vs: Vec<&str> = w.subgraph.vertices().collect();
        assert_eq!(vs, ["1", "2", "3"]);
        assert!(check_witness(&w));
    }

    #[test]
    fn theta_fallback_on_edge_points() {
        // Points inside the three parallel paths of a multigraph theta.
        let theta = Multigraph::from_parts(
            ["u", "w"],
            (0..3).map(|i| (format!("t{i}"), "u".to_string(), "w".to_string())),
        )
        .unwrap();
        let w = theta_or_circle_witness(
            &theta,
            &MarkedPoint::edge("t0", 1),
            &MarkedPoint::edge("t1", 1),
            &MarkedPoint::edge("t2", 1),
        )
        .unwrap();
        assert_eq!(w.kind, WitnessKind::Theta);
        assert!(check_witness(&w));
    }

    #[test]
    fn proof_construction_and_fan_both_check() {
        for name in ["theta", "complete(4)", "petersen", "cycle(5)"] {
            let graph = g(name);
            let ix = graph.to_indexed();
            let n = ix.len();
            for (a, b, c) in [(0, 1, 2), (0, n - 1, n / 2), (1, 2, n - 1)] {
                if a == b || b == c || a == c {
                    continue;
                }
                let (kind, walks) = theta_walks(&ix, a, b, c).unwrap();
                let w = ThreePointWitness {
                    kind,
                    subgraph: subgraph_of(&graph, &ix, &walks).unwrap(),
                    host: graph.clone(),
                    marked: [a, b, c].iter().map(|&i| ix.id(i).to_owned()).collect(),
                };
                assert!(check_witness(&w), "{name} {a} {b} {c}");
            }
        }
    }

    #[test]
    fn witness_needs_two_connectivity() {
        assert!(matches!(
            theta_or_circle_witness(&g("triod"), &v("x"), &v("y"), &v("z")),
            Err(SacError::NoWitnessGuaranteed(_))
        ));
    }

    #[test]
    fn checker_rejects_non_witnesses() {
        let path = g("path(3)");
        let w = ThreePointWitness {
            kind: WitnessKind::Circle,
            host: path.clone(),
            subgraph: path,
            marked: vec!["a".into(), "b".into(), "c".into()],
        };
        assert!(!check_witness(&w));
    }

    #[test]
    fn named_graph_ids() {
        assert_eq!(g("triod").vertices().collect::<Vec<_>>(), ["o", "x", "y", "z"]);
        assert_eq!(g("theta").vertices().collect::<Vec<_>>(), ["p1", "p2", "p3", "u", "w"]);
        assert_eq!(g("theta").edge_count(), 6);
        assert_eq!(g("cycle(4)").vertices().collect::<Vec<_>>(), ["a", "b", "c", "d"]);
        let p = g("petersen");
        assert_eq!((p.vertex_count(), p.edge_count()), (10, 15));
        assert!(p.vertices().all(|x| p.degree(x) == 3));
        assert!(p.is_simple());
        assert_eq!(g("complete(5)").edge_count(), 10);
        assert_eq!(g("figure8").degree("o"), 4);
        assert_eq!(g("cycle(30)").vertex_count(), 30);
        assert!(named_graph("dodecahedron").is_err());
        assert!(named_graph("cycle(x)").is_err());
    }

    #[test]
    fn random_graph_contract() {
        let a = random_graph(1, 6, 8, Requirement::TwoConnected).unwrap();
        assert!(is_topologically_2connected(&a));
        assert_eq!(a, random_graph(1, 6, 8, Requirement::TwoConnected).unwrap());
        assert_eq!(a.edge_count(), 8);
        assert!(random_graph(2, 5, 3, Requirement::TwoConnected).is_err());
        assert!(random_graph(2, 5, 3, Requirement::Connected).is_err());
        assert!(random_graph(2, 4, 7, Requirement::None).is_err());
        let c = random_graph(9, 9, 8, Requirement::Connected).unwrap();
        assert!(c.is_connected() && c.is_simple());
    }

    #[test]
    fn corpus_shape() {
        let corpus = standard_corpus(90, 7);
        assert!(corpus.len() >= 100);
        for (name, graph) in &corpus {
            assert!(graph.is_connected(), "{name}");
            assert!(graph.vertex_count() <= 10, "{name}");
        }
        assert_eq!(corpus, standard_corpus(90, 7));
    }
}
