//! Rotation systems, facial walks and genus; planarity testing with
//! Kuratowski witnesses; search for label-consistent embeddings of Cayley
//! graphs.
//!
//! Face tracing rule: the successor of dart `d` in its face is the dart
//! following `reverse(d)` in the rotation at `head(d)`. A vertex whose spin is
//! `-1` simply carries the mirrored cyclic order in its rotation, so the same
//! rule traces spin-aware embeddings.

mod consistent;
mod planarity;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cayley::CayleyGraph;
use crate::graph::{reverse, Dart, Graph, Vertex};

pub use consistent::{
    rotation_from_labels, search_consistent_embeddings, search_consistent_embeddings_with_budget,
    ConsistentEmbedding, DEFAULT_SEARCH_BUDGET, MAX_LABEL_DEGREE,
};
pub use planarity::{
    is_planar, kuratowski_witness, planar_embedding, planarity_test, verify_witness, KuratowskiKind,
    KuratowskiWitness, PlanarityResult,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("rotation has {found} vertices, graph has {expected}")]
    VertexCountMismatch { expected: usize, found: usize },
    #[error("dart {0} missing from the rotation system")]
    MissingDart(Dart),
    #[error("dart {dart} listed at vertex {vertex} but it leaves vertex {tail}")]
    MisplacedDart { dart: Dart, vertex: Vertex, tail: Vertex },
    #[error("dart {0} appears more than once")]
    DuplicateDart(Dart),
    #[error("consistent-embedding search needs a complete Cayley graph")]
    Truncated,
    #[error("label degree {0} exceeds the search limit")]
    LabelDegreeTooLarge(usize),
    #[error("search space of {candidates} candidates exceeds the budget {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },
    #[error("embedding is not planar (genus {0})")]
    NotPlanar(usize),
}

/// Cyclic order of the darts leaving each vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationSystem {
    pub order: Vec<Vec<Dart>>,
}

impl RotationSystem {
    /// Each vertex's darts in increasing id order.
    pub fn identity(g: &Graph) -> Self {
        Self { order: (0..g.vertex_count()).map(|v| g.darts_at(v).to_vec()).collect() }
    }

    /// Every vertex's cyclic order reversed.
    pub fn mirror(&self) -> Self {
        Self {
            order: self
                .order
                .iter()
                .map(|r| {
                    let mut r = r.clone();
                    r.reverse();
                    r
                })
                .collect(),
        }
    }

    /// Successor of each dart in its vertex's rotation, indexed by dart.
    pub fn successor_table(&self, dart_count: usize) -> Vec<Dart> {
        let mut succ = vec![usize::MAX; dart_count];
        for r in &self.order {
            for (i, &d) in r.iter().enumerate() {
                succ[d] = r[(i + 1) % r.len()];
            }
        }
        succ
    }

    /// Each vertex's rotation rotated to start at its least dart.
    pub fn normalized(&self) -> Self {
        Self {
            order: self
                .order
                .iter()
                .map(|r| match r.iter().enumerate().min_by_key(|&(_, d)| *d) {
                    Some((i, _)) => r[i..].iter().chain(&r[..i]).copied().collect(),
                    None => Vec::new(),
                })
                .collect(),
        }
    }

    pub fn validate(&self, g: &Graph) -> Result<(), EmbeddingError> {
        if self.order.len() != g.vertex_count() {
            return Err(EmbeddingError::VertexCountMismatch { expected: g.vertex_count(), found: self.order.len() });
        }
        let mut seen = vec![false; g.dart_count()];
        for (v, r) in self.order.iter().enumerate() {
            for &d in r {
                if d >= g.dart_count() {
                    return Err(EmbeddingError::MissingDart(d));
                }
                if g.tail(d) != v {
                    return Err(EmbeddingError::MisplacedDart { dart: d, vertex: v, tail: g.tail(d) });
                }
                if std::mem::replace(&mut seen[d], true) {
                    return Err(EmbeddingError::DuplicateDart(d));
                }
            }
        }
        if let Some(d) = seen.iter().position(|&s| !s) {
            return Err(EmbeddingError::MissingDart(d));
        }
        Ok(())
    }
}

/// A closed facial walk. `finite` is false when the walk meets a frontier
/// vertex of a truncated ball.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacialWalk {
    pub darts: Vec<Dart>,
    pub finite: bool,
}

impl FacialWalk {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Vertices visited, as tails of the darts.
    pub fn vertices(&self, g: &Graph) -> Vec<Vertex> {
        self.darts.iter().map(|&d| g.tail(d)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub rotation: RotationSystem,
    pub faces: Vec<FacialWalk>,
    pub genus: usize,
    /// Face index of every dart.
    pub face_of: Vec<usize>,
    /// Connected components, counting isolated vertices.
    pub components: usize,
}

impl Embedding {
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn is_planar(&self) -> bool {
        self.genus == 0
    }

    /// Number of faces of each length, sorted by length.
    pub fn face_vector(&self) -> std::collections::BTreeMap<usize, usize> {
        let mut m = std::collections::BTreeMap::new();
        for f in &self.faces {
            *m.entry(f.len()).or_insert(0) += 1;
        }
        m
    }

    /// Flags faces meeting a frontier vertex as not finite.
    pub fn mark_frontier(&mut self, g: &Graph, frontier: &[bool]) {
        for f in &mut self.faces {
            f.finite = !f.darts.iter().any(|&d| frontier[g.tail(d)]);
        }
    }

    /// `Σ|faces| = 2|E|` and `V − E + F = 2c − 2g`, counting one face per
    /// isolated vertex.
    pub fn check_euler(&self, g: &Graph) -> bool {
        let total: usize = self.faces.iter().map(FacialWalk::len).sum();
        let isolated = (0..g.vertex_count()).filter(|&v| g.degree(v) == 0).count();
        let lhs = g.vertex_count() as i64 - g.edge_count() as i64 + (self.faces.len() + isolated) as i64;
        total == 2 * g.edge_count() && lhs == 2 * self.components as i64 - 2 * self.genus as i64
    }
}

/// Traces all facial walks of `rot`. Faces are listed in order of their least
/// dart, and each walk starts at that dart.
pub fn trace_faces(g: &Graph, rot: &RotationSystem) -> Result<Embedding, EmbeddingError> {
    rot.validate(g)?;
    let succ = rot.successor_table(g.dart_count());
    let mut face_of = vec![usize::MAX; g.dart_count()];
    let mut faces = Vec::new();
    for start in 0..g.dart_count() {
        if face_of[start] != usize::MAX {
            continue;
        }
        let mut walk = Vec::new();
        let mut d = start;
        loop {
            face_of[d] = faces.len();
            walk.push(d);
            d = succ[reverse(d)];
            if d == start {
                break;
            }
        }
        faces.push(FacialWalk { darts: walk, finite: true });
    }
    let components = g.components().0;
    let isolated = (0..g.vertex_count()).filter(|&v| g.degree(v) == 0).count();
    let chi = g.vertex_count() as i64 - g.edge_count() as i64 + (faces.len() + isolated) as i64;
    let twice_genus = 2 * components as i64 - chi;
    debug_assert!(twice_genus >= 0 && twice_genus % 2 == 0);
    let emb = Embedding { rotation: rot.clone(), faces, genus: (twice_genus / 2) as usize, face_of, components };
    debug_assert!(emb.check_euler(g));
    Ok(emb)
}

/// Face statistics of an embedding of a (possibly truncated) Cayley graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceReport {
    pub finite: usize,
    pub frontier_touching: usize,
    pub max_finite_length: usize,
}

/// A face is frontier-touching iff it visits a frontier vertex.
pub fn classify_faces(ball: &CayleyGraph, emb: &Embedding) -> FaceReport {
    let mut report = FaceReport { finite: 0, frontier_touching: 0, max_finite_length: 0 };
    for f in &emb.faces {
        if f.darts.iter().any(|&d| ball.frontier[ball.graph.tail(d)]) {
            report.frontier_touching += 1;
        } else {
            report.finite += 1;
            report.max_finite_length = report.max_finite_length.max(f.len());
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn triangle_has_two_faces() {
        let g = named::cycle(3);
        let emb = trace_faces(&g, &RotationSystem::identity(&g)).unwrap();
        assert_eq!(emb.face_count(), 2);
        assert_eq!(emb.genus, 0);
        assert!(emb.check_euler(&g));
        assert!(emb.faces.iter().all(|f| f.len() == 3));
    }

    #[test]
    fn tetrahedron_rotation() {
        let g = named::complete(4);
        // Edges: 0:(0,1) 1:(0,2) 2:(0,3) 3:(1,2) 4:(1,3) 5:(2,3)
        let rot = RotationSystem { order: vec![vec![0, 2, 4], vec![1, 8, 6], vec![3, 7, 10], vec![5, 11, 9]] };
        let emb = trace_faces(&g, &rot).unwrap();
        assert_eq!(emb.genus, 0);
        assert_eq!(emb.face_vector().get(&3), Some(&4));
        assert!(emb.check_euler(&g));
    }

    #[test]
    fn k5_any_rotation_is_non_planar() {
        let g = named::complete(5);
        let emb = trace_faces(&g, &RotationSystem::identity(&g)).unwrap();
        assert!(emb.genus >= 1);
        assert!(emb.check_euler(&g));
    }

    #[test]
    fn loops_and_isolated_vertices() {
        let mut g = Graph::new(3);
        g.add_edge(0, 1);
        g.add_edge(1, 1);
        let emb = trace_faces(&g, &RotationSystem::identity(&g)).unwrap();
        assert_eq!(emb.components, 2);
        assert_eq!(emb.genus, 0);
        assert!(emb.check_euler(&g));
    }

    #[test]
    fn rejects_bad_rotations() {
        let g = named::cycle(3);
        let mut rot = RotationSystem::identity(&g);
        rot.order[0].pop();
        assert!(matches!(trace_faces(&g, &rot), Err(EmbeddingError::MissingDart(_))));
        let mut rot = RotationSystem::identity(&g);
        let stray = rot.order[1][0];
        rot.order[0].push(stray);
        assert!(trace_faces(&g, &rot).is_err());
    }
}
