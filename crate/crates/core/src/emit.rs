//! DOT and SVG drawings of graphs and trix cell graphs.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write;

use crate::graph::Multigraph;
use crate::trix::{TrixGraph, TrixVertex};

const SIZE: f64 = 500.0;
const MARGIN: f64 = 40.0;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn xml(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Undirected DOT graph; edges are labeled with their ids.
pub fn emit_dot(g: &Multigraph) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        let _ = writeln!(out, "  {};", quote(v));
    }
    for e in g.edges() {
        let _ = writeln!(out, "  {} -- {} [label={}];", quote(&e.a), quote(&e.b), quote(&e.id));
    }
    out.push_str("}\n");
    out
}

fn svg_open(out: &mut String) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
}

fn polyline(out: &mut String, points: &[(f64, f64)]) {
    let pts: Vec<String> = points.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
    let _ = writeln!(
        out,
        r#"<polyline class="witness" points="{}" fill="none" stroke="crimson" stroke-width="3"/>"#,
        pts.join(" ")
    );
}

/// Vertices on a circle in id order. Parallel edges bend apart, loops are
/// small circles outside their vertex. A witness, given as vertex ids, is
/// drawn as a highlighted polyline in path order.
pub fn emit_svg_graph(g: &Multigraph, witness: Option<&[String]>) -> String {
    let n = g.vertex_count().max(1) as f64;
    let c = SIZE / 2.0;
    let r = c - MARGIN;
    let pos: BTreeMap<&str, (f64, f64)> = g
        .vertices()
        .enumerate()
        .map(|(i, v)| {
            let a = -PI / 2.0 + 2.0 * PI * i as f64 / n;
            (v, (c + r * a.cos(), c + r * a.sin()))
        })
        .collect();
    let mut out = String::new();
    svg_open(&mut out);
    let mut seen: BTreeMap<(&str, &str), usize> = BTreeMap::new();
    for e in g.edges() {
        let key = if e.a <= e.b {
            (e.a.as_str(), e.b.as_str())
        } else {
            (e.b.as_str(), e.a.as_str())
        };
        let k = *seen.entry(key).and_modify(|k| *k += 1).or_insert(0);
        let (x1, y1) = pos[e.a.as_str()];
        let (x2, y2) = pos[e.b.as_str()];
        let id = xml(&e.id);
        if e.is_loop() {
            let (dx, dy) = (x1 - c, y1 - c);
            let len = (dx * dx + dy * dy).sqrt().max(1.0);
            let rr = 12.0 + 6.0 * k as f64;
            let (cx, cy) = (x1 + dx / len * rr, y1 + dy / len * rr);
            let _ = writeln!(
                out,
                r#"<circle class="edge" data-id="{id}" cx="{cx:.3}" cy="{cy:.3}" r="{rr:.3}" fill="none" stroke="black"/>"#
            );
        } else if k == 0 {
            let _ = writeln!(
                out,
                r#"<line class="edge" data-id="{id}" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="black"/>"#
            );
        } else {
            let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
            let (dx, dy) = (x2 - x1, y2 - y1);
            let len = (dx * dx + dy * dy).sqrt().max(1.0);
            let off = 20.0 * k.div_ceil(2) as f64 * if k % 2 == 1 { 1.0 } else { -1.0 };
            let (qx, qy) = (mx - dy / len * off, my + dx / len * off);
            let _ = writeln!(
                out,
                r#"<path class="edge" data-id="{id}" d="M {x1:.3} {y1:.3} Q {qx:.3} {qy:.3} {x2:.3} {y2:.3}" fill="none" stroke="black"/>"#
            );
        }
    }
    if let Some(w) = witness {
        let points: Vec<(f64, f64)> = w.iter().filter_map(|v| pos.get(v.as_str()).copied()).collect();
        polyline(&mut out, &points);
    }
    for (v, (x, y)) in &pos {
        let _ = writeln!(
            out,
            r#"<circle class="vertex" cx="{x:.3}" cy="{y:.3}" r="4" fill="black"/><text x="{:.3}" y="{:.3}" font-size="12">{}</text>"#,
            x + 6.0,
            y - 6.0,
            xml(v)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Image of corner `k` (0-based) under the projection. N = 3 gives an
/// equilateral triangle; larger N shrink the corners at different rates so
/// that no two junction vertices collide.
fn corner_image(n: usize, k: usize) -> (f64, f64) {
    let a = -PI / 2.0 + 2.0 * PI * k as f64 / n as f64;
    let r = if n == 3 { 1.0 } else { 1.0 / (1.0 + 0.13 * k as f64) };
    (r * a.cos(), r * a.sin())
}

pub fn project(v: &TrixVertex) -> (f64, f64) {
    let n = v.dim();
    let c = SIZE / 2.0;
    let scale = c - MARGIN;
    let (mut x, mut y) = (0.0, 0.0);
    for (k, w) in v.coords_f64().into_iter().enumerate() {
        let (px, py) = corner_image(n, k);
        x += w * px;
        y += w * py;
    }
    (c + scale * x, c + scale * y)
}

/// Cell chords as lines under a fixed linear projection of barycentric
/// coordinates, vertices as dots when there are few of them, and the
/// witness as a polyline.
pub fn emit_svg_trix(t: &TrixGraph, witness: Option<&[TrixVertex]>) -> String {
    let pos: Vec<(f64, f64)> = t.vertices().iter().map(project).collect();
    let mut out = String::new();
    svg_open(&mut out);
    for (u, v) in t.graph().edges() {
        let ((x1, y1), (x2, y2)) = (pos[u], pos[v]);
        let _ = writeln!(
            out,
            r#"<line class="edge" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="black" stroke-width="0.6"/>"#
        );
    }
    if let Some(w) = witness {
        let points: Vec<(f64, f64)> = w.iter().map(project).collect();
        polyline(&mut out, &points);
    }
    if pos.len() <= 200 {
        for (x, y) in &pos {
            let _ = writeln!(
                out,
                r#"<circle class="vertex" cx="{x:.3}" cy="{y:.3}" r="2" fill="black"/>"#
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
