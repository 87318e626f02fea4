//! JSON, DOT and SVG renderings of Cayley graphs and embeddings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::cayley::CayleyGraph;
use crate::corpus::SCHEMA;
use crate::embedding::Embedding;
use crate::graph::{Graph, Vertex};

#[derive(Serialize)]
pub struct VertexJson<'a> {
    pub id: usize,
    pub name: &'a str,
    pub frontier: bool,
}

#[derive(Serialize)]
pub struct EdgeJson<'a> {
    pub tail: usize,
    pub head: usize,
    pub label: &'a str,
    pub directed: bool,
}

#[derive(Serialize)]
pub struct GraphJson<'a> {
    pub schema: &'static str,
    pub vertices: Vec<VertexJson<'a>>,
    pub edges: Vec<EdgeJson<'a>>,
    pub radius: Option<usize>,
}

pub fn graph_json(cg: &CayleyGraph) -> GraphJson<'_> {
    GraphJson {
        schema: SCHEMA,
        vertices: (0..cg.vertex_count())
            .map(|v| VertexJson { id: v, name: &cg.names[v], frontier: cg.frontier[v] })
            .collect(),
        edges: cg
            .graph
            .edges()
            .iter()
            .enumerate()
            .map(|(e, &(tail, head))| EdgeJson { tail, head, label: cg.label(e), directed: cg.is_directed(e) })
            .collect(),
        radius: cg.radius,
    }
}

#[derive(Serialize)]
pub struct EmbeddingJson {
    /// Vertex id (as a string key) to its cyclic dart order.
    pub rotation: BTreeMap<String, Vec<usize>>,
    pub faces: Vec<Vec<usize>>,
    pub genus: usize,
}

pub fn embedding_json(emb: &Embedding) -> EmbeddingJson {
    EmbeddingJson {
        rotation: emb.rotation.order.iter().enumerate().map(|(v, r)| (v.to_string(), r.clone())).collect(),
        faces: emb.faces.iter().map(|f| f.darts.clone()).collect(),
        genus: emb.genus,
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Directed edges carry their generator label; involution edges are drawn
/// without arrowheads. Frontier vertices are dashed.
pub fn to_dot(cg: &CayleyGraph) -> String {
    let mut s = String::from("digraph cayley {\n");
    for v in 0..cg.vertex_count() {
        let style = if cg.frontier[v] { ", style=dashed" } else { "" };
        let _ = writeln!(s, "  {v} [label=\"{}\"{style}];", dot_escape(&cg.names[v]));
    }
    for (e, &(u, v)) in cg.graph.edges().iter().enumerate() {
        let dir = if cg.is_directed(e) { "" } else { ", dir=none" };
        let _ = writeln!(s, "  {u} -> {v} [label=\"{}\"{dir}];", dot_escape(cg.label(e)));
    }
    s.push_str("}\n");
    s
}

/// Barycentric layout: the longest face is pinned to the unit circle and
/// every other vertex moves to the mean of its neighbours.
pub fn tutte_layout(g: &Graph, emb: &Embedding) -> Vec<(f64, f64)> {
    let n = g.vertex_count();
    let mut pos = vec![(0.0, 0.0); n];
    let mut pinned = vec![false; n];
    if let Some(outer) = emb.faces.iter().enumerate().max_by_key(|(i, f)| (f.len(), std::cmp::Reverse(*i))) {
        let mut ring: Vec<Vertex> = Vec::new();
        for v in outer.1.vertices(g) {
            if !ring.contains(&v) {
                ring.push(v);
            }
        }
        let k = ring.len() as f64;
        for (i, &v) in ring.iter().enumerate() {
            let a = std::f64::consts::TAU * i as f64 / k;
            pos[v] = (a.cos(), a.sin());
            pinned[v] = true;
        }
    }
    let adj: Vec<Vec<Vertex>> = (0..n).map(|v| g.neighbors(v)).collect();
    for _ in 0..500 {
        for v in 0..n {
            if pinned[v] || adj[v].is_empty() {
                continue;
            }
            let (sx, sy) = adj[v].iter().fold((0.0, 0.0), |(x, y), &w| (x + pos[w].0, y + pos[w].1));
            let m = adj[v].len() as f64;
            pos[v] = (sx / m, sy / m);
        }
    }
    pos
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Straight-line drawing on a 600 × 600 canvas.
pub fn to_svg(cg: &CayleyGraph, emb: &Embedding) -> String {
    let pos = tutte_layout(&cg.graph, emb);
    let map = |(x, y): (f64, f64)| (300.0 + 260.0 * x, 300.0 - 260.0 * y);
    let mut s = String::from(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n",
    );
    for (e, &(u, v)) in cg.graph.edges().iter().enumerate() {
        let ((x1, y1), (x2, y2)) = (map(pos[u]), map(pos[v]));
        let _ = writeln!(
            s,
            "  <line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"black\"><title>{}</title></line>",
            xml_escape(cg.label(e))
        );
    }
    for v in 0..cg.vertex_count() {
        let (x, y) = map(pos[v]);
        let fill = if cg.frontier[v] { "white" } else { "#4a7ab0" };
        let _ = writeln!(
            s,
            "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"6\" fill=\"{fill}\" stroke=\"black\"><title>{}</title></circle>",
            xml_escape(&cg.names[v])
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::cayley;
    use crate::embedding::{planar_embedding, trace_faces};

    #[test]
    fn prism_exports() {
        let cg = cayley("prism").unwrap();
        let json = serde_json::to_value(graph_json(&cg)).unwrap();
        assert_eq!(json["schema"], "pcl/1");
        assert_eq!(json["vertices"].as_array().unwrap().len(), 8);
        assert_eq!(json["edges"].as_array().unwrap().len(), 12);
        let dot = to_dot(&cg);
        assert_eq!(dot.matches("->").count(), 12);
        assert_eq!(dot.matches("dir=none").count(), 4);
        let emb = trace_faces(&cg.graph, &planar_embedding(&cg.graph).unwrap()).unwrap();
        let svg = to_svg(&cg, &emb);
        assert_eq!(svg.matches("<line").count(), 12);
        let ej = serde_json::to_value(embedding_json(&emb)).unwrap();
        assert_eq!(ej["faces"].as_array().unwrap().len(), 6);
    }
}
