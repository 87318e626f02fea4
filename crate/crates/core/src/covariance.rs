//! Covariance of embeddings under left multiplication, Whitney uniqueness of
//! 3-connected planar embeddings, and the orientation character.

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::augment::vertex_connectivity;
use crate::cayley::CayleyGraph;
use crate::embedding::{planar_embedding, trace_faces, Embedding, EmbeddingError, RotationSystem};
use crate::graph::{edge_of, reverse, Dart, Graph, Vertex};

/// Automorphism enumeration stops after this many maps.
pub const AUTOMORPHISM_LIMIT: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CovarianceError {
    #[error("covariance is only defined on complete Cayley graphs, not truncated balls")]
    Truncated,
    #[error("graph is not planar")]
    NonPlanar,
    #[error("embedding has genus {0}, expected 0")]
    NotGenusZero(usize),
    #[error("graph is not 3-connected (vertex connectivity {0})")]
    NotThreeConnected(usize),
    #[error("more than {0} automorphisms; uniqueness check aborted")]
    TooManyAutomorphisms(usize),
    #[error("embedding is not unique: an automorphism moves a face to a non-face")]
    NotUnique,
    #[error("element {0} neither preserves nor reverses the rotation system")]
    Inconsistent(String),
    #[error("element index {0} out of range")]
    UnknownElement(usize),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Covariance {
    Covariant,
    /// Left multiplication by `generator` sends face `face` to a walk that is
    /// not a face.
    Violation { generator: String, face: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrientationClass {
    Preserving,
    Reversing,
}

impl OrientationClass {
    pub fn sign(self) -> i8 {
        match self {
            OrientationClass::Preserving => 1,
            OrientationClass::Reversing => -1,
        }
    }
}

impl std::fmt::Display for OrientationClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            OrientationClass::Preserving => "preserving",
            OrientationClass::Reversing => "reversing",
        })
    }
}

/// Image of every dart under left multiplication by `x`, on a complete
/// Cayley graph. Edges are matched by their endpoints and generator.
pub fn left_dart_map(cg: &CayleyGraph, x: usize) -> Vec<Dart> {
    let g = cg.group.as_ref().expect("complete Cayley graph carries its group");
    let graph = &cg.graph;
    let mut index: HashMap<(Vertex, Vertex, usize), usize> = HashMap::new();
    for (e, &(u, v)) in graph.edges().iter().enumerate() {
        let key = if cg.is_directed(e) { (u, v, cg.edge_generator[e]) } else { (u.min(v), u.max(v), cg.edge_generator[e]) };
        index.insert(key, e);
    }
    (0..graph.dart_count())
        .map(|d| {
            let e = edge_of(d);
            let (u, v) = graph.endpoints(e);
            let (xu, xv) = (g.mul(x, u), g.mul(x, v));
            let key = if cg.is_directed(e) { (xu, xv, cg.edge_generator[e]) } else { (xu.min(xv), xu.max(xv), cg.edge_generator[e]) };
            let f = index[&key];
            if graph.is_loop(e) || cg.is_directed(e) {
                2 * f + d % 2
            } else if graph.tail(2 * f) == g.mul(x, graph.tail(d)) {
                2 * f
            } else {
                2 * f + 1
            }
        })
        .collect()
}

/// Canonical form of a closed dart walk up to rotation and reversal.
pub fn canonical_walk(darts: &[Dart]) -> Vec<Dart> {
    let rev: Vec<Dart> = darts.iter().rev().map(|&d| reverse(d)).collect();
    let mut best: Option<Vec<Dart>> = None;
    for seq in [darts, &rev[..]] {
        for i in 0..seq.len() {
            let cand: Vec<Dart> = seq[i..].iter().chain(&seq[..i]).copied().collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// True iff left multiplication by every generator maps every facial walk of
/// `emb` to a facial walk (up to rotation and reversal).
pub fn is_covariant(cg: &CayleyGraph, emb: &Embedding) -> Result<Covariance, CovarianceError> {
    if !cg.is_complete() || cg.group.is_none() {
        return Err(CovarianceError::Truncated);
    }
    if emb.genus != 0 {
        return Err(CovarianceError::NotGenusZero(emb.genus));
    }
    let faces: HashSet<Vec<Dart>> = emb.faces.iter().map(|f| canonical_walk(&f.darts)).collect();
    let found = cg
        .generators
        .par_iter()
        .enumerate()
        .filter_map(|(gi, gen)| {
            let map = left_dart_map(cg, gen.element.expect("complete graph generator has an element"));
            emb.faces.iter().enumerate().find_map(|(fi, f)| {
                let img: Vec<Dart> = f.darts.iter().map(|&d| map[d]).collect();
                (!faces.contains(&canonical_walk(&img))).then_some((gi, fi))
            })
        })
        .collect::<Vec<_>>();
    Ok(match found.first() {
        None => Covariance::Covariant,
        Some(&(gi, fi)) => Covariance::Violation { generator: cg.generators[gi].label.clone(), face: fi },
    })
}

/// Vertex automorphisms of `g` (respecting edge multiplicities and loops),
/// found by backtracking in breadth-first order. Fails past `limit` maps.
pub fn automorphisms(g: &Graph, limit: usize) -> Result<Vec<Vec<Vertex>>, CovarianceError> {
    let n = g.vertex_count();
    let mut mult: HashMap<(Vertex, Vertex), usize> = HashMap::new();
    for &(u, v) in g.edges() {
        *mult.entry((u.min(v), u.max(v))).or_default() += 1;
    }
    let m = |u: Vertex, v: Vertex| mult.get(&(u.min(v), u.max(v))).copied().unwrap_or(0);
    // Breadth-first order over all components.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let start = order.len();
        order.push(s);
        let mut i = start;
        while i < order.len() {
            let u = order[i];
            for w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
            i += 1;
        }
    }
    let signature: Vec<(usize, usize)> = (0..n).map(|v| (g.degree(v), m(v, v))).collect();
    let mut found = Vec::new();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        depth: usize,
        order: &[Vertex],
        image: &mut Vec<Vertex>,
        used: &mut Vec<bool>,
        found: &mut Vec<Vec<Vertex>>,
        limit: usize,
        signature: &[(usize, usize)],
        m: &dyn Fn(Vertex, Vertex) -> usize,
    ) -> bool {
        if depth == order.len() {
            found.push(image.clone());
            return found.len() <= limit;
        }
        let v = order[depth];
        for c in 0..order.len() {
            if used[c] || signature[c] != signature[v] {
                continue;
            }
            let ok = order[..depth].iter().all(|&u| m(u, v) == m(image[u], c));
            if !ok {
                continue;
            }
            image[v] = c;
            used[c] = true;
            let keep_going = extend(depth + 1, order, image, used, found, limit, signature, m);
            used[c] = false;
            image[v] = usize::MAX;
            if !keep_going {
                return false;
            }
        }
        true
    }
    if !extend(0, &order, &mut image, &mut used, &mut found, limit, &signature, &m) {
        return Err(CovarianceError::TooManyAutomorphisms(limit));
    }
    Ok(found)
}

/// Faces as cyclic vertex sequences up to rotation and reversal.
fn vertex_faces(g: &Graph, emb: &Embedding, map: Option<&[Vertex]>) -> BTreeSet<Vec<Vertex>> {
    emb.faces
        .iter()
        .map(|f| {
            let vs: Vec<Vertex> =
                f.darts.iter().map(|&d| g.tail(d)).map(|v| map.map_or(v, |m| m[v])).collect();
            canonical_cycle(&vs)
        })
        .collect()
}

fn canonical_cycle(vs: &[Vertex]) -> Vec<Vertex> {
    let rev: Vec<Vertex> = vs.iter().rev().copied().collect();
    let mut best: Option<Vec<Vertex>> = None;
    for seq in [vs, &rev[..]] {
        for i in 0..seq.len() {
            let cand: Vec<Vertex> = seq[i..].iter().chain(&seq[..i]).copied().collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WhitneyEmbedding {
    pub embedding: Embedding,
    pub connectivity: usize,
    /// Automorphisms under which the face set was checked invariant.
    pub automorphisms_checked: usize,
}

/// Canonical rotation of a planar graph: the lexicographically smaller of the
/// normalised rotation and its normalised mirror.
pub fn canonical_rotation(g: &Graph) -> Option<RotationSystem> {
    let rot = planar_embedding(g)?.normalized();
    let mirror = rot.mirror().normalized();
    Some(if mirror.order < rot.order { mirror } else { rot })
}

/// For a 3-connected planar graph, the embedding (unique up to reflection)
/// together with a check that every automorphism maps faces to faces.
pub fn whitney_unique(g: &Graph) -> Result<WhitneyEmbedding, CovarianceError> {
    let rot = canonical_rotation(g).ok_or(CovarianceError::NonPlanar)?;
    let k = vertex_connectivity(g);
    if k < 3 {
        return Err(CovarianceError::NotThreeConnected(k));
    }
    let embedding = trace_faces(g, &rot)?;
    let faces = vertex_faces(g, &embedding, None);
    let autos = automorphisms(g, AUTOMORPHISM_LIMIT)?;
    let ok = autos.par_iter().all(|a| vertex_faces(g, &embedding, Some(a)) == faces);
    if !ok {
        return Err(CovarianceError::NotUnique);
    }
    Ok(WhitneyEmbedding { embedding, connectivity: k, automorphisms_checked: autos.len() })
}

/// Orientation classes for the elements of a complete, planar, 3-connected
/// Cayley graph, sharing one canonical embedding.
pub struct OrientationOracle<'a> {
    cg: &'a CayleyGraph,
    rotation: RotationSystem,
}

impl<'a> OrientationOracle<'a> {
    pub fn new(cg: &'a CayleyGraph) -> Result<Self, CovarianceError> {
        if !cg.is_complete() || cg.group.is_none() {
            return Err(CovarianceError::Truncated);
        }
        let rotation = canonical_rotation(&cg.graph).ok_or(CovarianceError::NonPlanar)?;
        let k = vertex_connectivity(&cg.graph);
        if k < 3 {
            return Err(CovarianceError::NotThreeConnected(k));
        }
        Ok(Self { cg, rotation })
    }

    pub fn rotation(&self) -> &RotationSystem {
        &self.rotation
    }

    /// Preserving if left multiplication by `x` carries each vertex's cyclic
    /// order onto the cyclic order at the image vertex, reversing if onto its
    /// mirror.
    pub fn class(&self, x: usize) -> Result<OrientationClass, CovarianceError> {
        let g = self.cg.group.as_ref().unwrap();
        if x >= g.order() {
            return Err(CovarianceError::UnknownElement(x));
        }
        let map = left_dart_map(self.cg, x);
        let (mut same, mut mirrored) = (true, true);
        for (v, r) in self.rotation.order.iter().enumerate() {
            let img: Vec<Dart> = r.iter().map(|&d| map[d]).collect();
            let target = &self.rotation.order[g.mul(x, v)];
            same &= cyclic_eq(&img, target);
            let rev: Vec<Dart> = img.iter().rev().copied().collect();
            mirrored &= cyclic_eq(&rev, target);
        }
        match (same, mirrored) {
            (true, false) => Ok(OrientationClass::Preserving),
            (false, true) => Ok(OrientationClass::Reversing),
            _ => Err(CovarianceError::Inconsistent(g.name(x).to_string())),
        }
    }

    /// Class of every element in index order.
    pub fn table(&self) -> Result<Vec<OrientationClass>, CovarianceError> {
        let n = self.cg.group.as_ref().unwrap().order();
        (0..n).into_par_iter().map(|x| self.class(x)).collect()
    }
}

fn cyclic_eq(a: &[Dart], b: &[Dart]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    match b.iter().position(|&d| d == a[0]) {
        None => false,
        Some(off) => (0..a.len()).all(|i| a[i] == b[(i + off) % b.len()]),
    }
}

/// Orientation class of one element; see [`OrientationOracle::class`].
pub fn orientation_class(cg: &CayleyGraph, x: usize) -> Result<OrientationClass, CovarianceError> {
    OrientationOracle::new(cg)?.class(x)
}
