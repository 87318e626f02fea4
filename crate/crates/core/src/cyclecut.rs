//! GF(2) edge-space algebra on plane graphs: crossing parity of cycles with
//! respect to pairs of faces, the parity sum check, separating cycles between
//! faces, and generation of the cut space by an orbit of vertex stars.
//!
//! Faces stand in for ends here: on a finite plane graph a cycle separates
//! two faces iff a dual path between them crosses it an odd number of times.

use std::collections::VecDeque;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::actions::left_action;
use crate::augment::vertex_connectivity;
use crate::cayley::CayleyGraph;
use crate::embedding::{planar_embedding, trace_faces, Embedding};
use crate::graph::{edge_of, named, Dart, EdgeId, Graph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycleCutError {
    #[error("edge set is not a single cycle")]
    NotACycle,
    #[error("embedding has genus {0}; separation needs a plane graph")]
    NotPlanar(usize),
    #[error("face {0} does not exist")]
    UnknownFace(usize),
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("star check needs a complete, connected Cayley graph")]
    NotComplete,
    #[error("no separating cycle found between faces {0} and {1}")]
    NoSeparatingCycle(usize, usize),
}

/// Characteristic vector of an edge set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeVector {
    len: usize,
    blocks: Vec<u64>,
}

impl EdgeVector {
    pub fn zeros(len: usize) -> Self {
        Self { len, blocks: vec![0; len.div_ceil(64)] }
    }

    pub fn from_edges(len: usize, edges: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut v = Self::zeros(len);
        for e in edges {
            v.toggle(e);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, e: EdgeId) -> bool {
        self.blocks[e / 64] >> (e % 64) & 1 == 1
    }

    pub fn toggle(&mut self, e: EdgeId) {
        self.blocks[e / 64] ^= 1 << (e % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn count(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// Symmetric difference in place.
    pub fn add(&mut self, other: &EdgeVector) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a ^= b;
        }
    }

    pub fn sum(&self, other: &EdgeVector) -> EdgeVector {
        let mut s = self.clone();
        s.add(other);
        s
    }

    pub fn support(&self) -> Vec<EdgeId> {
        (0..self.len).filter(|&e| self.get(e)).collect()
    }

    fn leading(&self) -> Option<usize> {
        self.blocks
            .iter()
            .enumerate()
            .find(|(_, &b)| b != 0)
            .map(|(i, b)| i * 64 + b.trailing_zeros() as usize)
    }
}

/// Rank over GF(2) by Gaussian elimination.
pub fn rank(vectors: &[EdgeVector]) -> usize {
    let mut basis: Vec<EdgeVector> = Vec::new();
    for v in vectors {
        let mut v = v.clone();
        loop {
            let Some(lead) = v.leading() else { break };
            match basis.iter().find(|b| b.leading() == Some(lead)) {
                Some(b) => v.add(b),
                None => {
                    basis.push(v);
                    break;
                }
            }
        }
    }
    basis.len()
}

/// True iff the support is non-empty, connected and every vertex has even
/// degree 0 or 2 in it (a loop counts twice).
pub fn is_single_cycle(g: &Graph, v: &EdgeVector) -> bool {
    let support = v.support();
    if support.is_empty() {
        return false;
    }
    let mut deg = vec![0usize; g.vertex_count()];
    for &e in &support {
        let (a, b) = g.endpoints(e);
        deg[a] += 1;
        deg[b] += 1;
    }
    if deg.iter().any(|&d| d != 0 && d != 2) {
        return false;
    }
    let (sub, _) = g.edge_subgraph(|e| v.get(e));
    let (_, comp) = sub.components();
    let c0 = comp[g.endpoints(support[0]).0];
    (0..g.vertex_count()).all(|x| deg[x] == 0 || comp[x] == c0)
}

/// Boundary of a face as an edge vector (edges traversed twice cancel).
pub fn face_boundary(g: &Graph, emb: &Embedding, f: usize) -> EdgeVector {
    EdgeVector::from_edges(g.edge_count(), emb.faces[f].darts.iter().map(|&d| edge_of(d)))
}

fn check_inputs(g: &Graph, emb: &Embedding, f1: usize, f2: usize) -> Result<(), CycleCutError> {
    if emb.genus != 0 {
        return Err(CycleCutError::NotPlanar(emb.genus));
    }
    for f in [f1, f2] {
        if f >= emb.face_count() {
            return Err(CycleCutError::UnknownFace(f));
        }
    }
    debug_assert_eq!(emb.face_of.len(), g.dart_count());
    Ok(())
}

/// Dual path from `f1` to `f2` as the list of primal edges it crosses.
pub fn dual_path(_g: &Graph, emb: &Embedding, f1: usize, f2: usize) -> Option<Vec<EdgeId>> {
    let nf = emb.face_count();
    let mut via: Vec<Option<(usize, EdgeId)>> = vec![None; nf];
    let mut seen = vec![false; nf];
    seen[f1] = true;
    let mut queue = VecDeque::from([f1]);
    while let Some(f) = queue.pop_front() {
        if f == f2 {
            let mut path = Vec::new();
            let mut cur = f2;
            while let Some((prev, e)) = via[cur] {
                path.push(e);
                cur = prev;
            }
            path.reverse();
            return Some(path);
        }
        for &d in &emb.faces[f].darts {
            let other = emb.face_of[d ^ 1];
            if !seen[other] {
                seen[other] = true;
                via[other] = Some((f, edge_of(d)));
                queue.push_back(other);
            }
        }
    }
    None
}

/// 1 iff the cycle separates the two faces: parity of the number of cycle
/// edges crossed by a dual path between them.
pub fn crossing_parity(
    g: &Graph,
    emb: &Embedding,
    cyc: &EdgeVector,
    f1: usize,
    f2: usize,
) -> Result<u8, CycleCutError> {
    check_inputs(g, emb, f1, f2)?;
    if !is_single_cycle(g, cyc) {
        return Err(CycleCutError::NotACycle);
    }
    // Faces of one component of a plane graph all lie in one dual component;
    // a disconnected dual path means the faces are in different components,
    // which no cycle separates.
    let path = match dual_path(g, emb, f1, f2) {
        Some(p) => p,
        None => return Ok(0),
    };
    Ok((path.iter().filter(|&&e| cyc.get(e)).count() % 2) as u8)
}

/// Oracle for [`crossing_parity`]: flood the dual graph from `f1` without
/// crossing the cycle; the faces are separated iff `f2` stays dry.
pub fn crossing_parity_flood(
    g: &Graph,
    emb: &Embedding,
    cyc: &EdgeVector,
    f1: usize,
    f2: usize,
) -> Result<u8, CycleCutError> {
    check_inputs(g, emb, f1, f2)?;
    if !is_single_cycle(g, cyc) {
        return Err(CycleCutError::NotACycle);
    }
    let mut wet = vec![false; emb.face_count()];
    let mut stack = vec![f1];
    wet[f1] = true;
    while let Some(f) = stack.pop() {
        for &d in &emb.faces[f].darts {
            if cyc.get(edge_of(d)) {
                continue;
            }
            let other = emb.face_of[d ^ 1];
            if !wet[other] {
                wet[other] = true;
                stack.push(other);
            }
        }
    }
    // Faces in another component of the dual are never separated.
    let reachable = dual_path(g, emb, f1, f2).is_some();
    Ok(u8::from(reachable && !wet[f2]))
}

/// Parities of the summands and of their GF(2) sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SepSumLedger {
    pub parities: Vec<u8>,
    pub sum_is_cycle: bool,
    pub sum_parity: Option<u8>,
    /// The sum is a cycle whose parity differs from the XOR of the summands'.
    pub violation: bool,
}

/// Sums `cycles` and compares the parity of the sum with the parities of the
/// summands. When every summand fails to separate the faces, neither does
/// their sum. A sum that is not a single cycle is reported, not asserted.
pub fn sep_sum_check(
    g: &Graph,
    emb: &Embedding,
    f1: usize,
    f2: usize,
    cycles: &[EdgeVector],
) -> Result<SepSumLedger, CycleCutError> {
    let parities = cycles.iter().map(|c| crossing_parity(g, emb, c, f1, f2)).collect::<Result<Vec<u8>, _>>()?;
    let mut total = EdgeVector::zeros(g.edge_count());
    for c in cycles {
        total.add(c);
    }
    let sum_is_cycle = is_single_cycle(g, &total);
    let sum_parity = if sum_is_cycle { Some(crossing_parity(g, emb, &total, f1, f2)?) } else { None };
    let expected = parities.iter().fold(0, |a, &p| a ^ p);
    let violation = sum_parity.is_some_and(|p| p != expected);
    Ok(SepSumLedger { parities, sum_is_cycle, sum_parity, violation })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeparationMethod {
    /// Path `P` between the boundaries, closed up by a detour `R` in `G − P`.
    PathDetour,
    /// One of the two facial boundaries, used when the detour is unavailable
    /// (for instance a face bounded by two parallel edges).
    FaceBoundary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatingCycle {
    pub cycle: EdgeVector,
    pub edges: Vec<EdgeId>,
    pub method: SeparationMethod,
}

/// A cycle separating faces `f1 != f2` of a 2-connected plane graph.
///
/// Takes a shortest path `P` from `∂f1` to `∂f2` starting at `p`, the
/// neighbours `u, v` of `p` along `∂f1`, and a shortest `u`–`v` path `R` in
/// `G − P`; the cycle is `R v p u`. The parity of the result is rechecked.
pub fn separating_cycle_between_faces(
    g: &Graph,
    emb: &Embedding,
    f1: usize,
    f2: usize,
) -> Result<SeparatingCycle, CycleCutError> {
    check_inputs(g, emb, f1, f2)?;
    if f1 == f2 {
        return Err(CycleCutError::NoSeparatingCycle(f1, f2));
    }
    if g.vertex_count() < 2 || (g.vertex_count() > 2 && vertex_connectivity(g) < 2) || !g.is_connected() {
        return Err(CycleCutError::NotTwoConnected);
    }
    if let Some(c) = path_detour(g, emb, f1, f2) {
        if crossing_parity(g, emb, &c, f1, f2)? == 1 {
            return Ok(SeparatingCycle { edges: c.support(), cycle: c, method: SeparationMethod::PathDetour });
        }
    }
    for f in [f1, f2] {
        let c = face_boundary(g, emb, f);
        if is_single_cycle(g, &c) && crossing_parity(g, emb, &c, f1, f2)? == 1 {
            return Ok(SeparatingCycle { edges: c.support(), cycle: c, method: SeparationMethod::FaceBoundary });
        }
    }
    Err(CycleCutError::NoSeparatingCycle(f1, f2))
}

fn path_detour(g: &Graph, emb: &Embedding, f1: usize, f2: usize) -> Option<EdgeVector> {
    let walk1: Vec<Dart> = emb.faces[f1].darts.clone();
    let verts1: Vec<Vertex> = walk1.iter().map(|&d| g.tail(d)).collect();
    let verts2: Vec<Vertex> = emb.faces[f2].darts.iter().map(|&d| g.tail(d)).collect();
    let path = g.shortest_path(&verts1, &verts2, |_| true)?;
    let p = path[0];
    // Position of p on ∂f1: the dart entering p and the dart leaving it.
    let k = walk1.len();
    let j = verts1.iter().position(|&x| x == p)?;
    let (into_p, out_of_p) = (walk1[(j + k - 1) % k], walk1[j]);
    let (u, v) = (g.tail(into_p), g.head(out_of_p));
    if u == v || u == p || v == p {
        return None;
    }
    let mut on_path = vec![false; g.vertex_count()];
    for &x in &path {
        on_path[x] = true;
    }
    let r = g.shortest_path(&[u], &[v], |x| !on_path[x])?;
    let mut edges: Vec<EdgeId> = r.windows(2).map(|w| g.edge_between(w[0], w[1]).unwrap()).collect();
    edges.push(edge_of(into_p));
    edges.push(edge_of(out_of_p));
    let c = EdgeVector::from_edges(g.edge_count(), edges);
    is_single_cycle(g, &c).then_some(c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarCheck {
    pub rank: usize,
    pub expected: usize,
    pub ok: bool,
}

/// Vertex star `δ(v)`: non-loop edges at `v`.
pub fn star(g: &Graph, v: Vertex) -> EdgeVector {
    EdgeVector::from_edges(
        g.edge_count(),
        g.darts_at(v).iter().map(|&d| edge_of(d)).filter(|&e| !g.is_loop(e)),
    )
}

/// Rank of the orbit of the identity's star under left multiplication,
/// compared with `|V| − 1`, the dimension of the cut space.
pub fn star_generation_check(cg: &CayleyGraph) -> Result<StarCheck, CycleCutError> {
    let a = left_action(cg).map_err(|_| CycleCutError::NotComplete)?;
    if !cg.graph.is_connected() {
        return Err(CycleCutError::NotComplete);
    }
    let g = &cg.graph;
    let s = star(g, 0);
    let orbit: Vec<EdgeVector> = a
        .dart_perm
        .iter()
        .map(|perm| EdgeVector::from_edges(g.edge_count(), s.support().into_iter().map(|e| edge_of(perm[2 * e]))))
        .collect();
    let r = rank(&orbit);
    let expected = g.vertex_count() - 1;
    Ok(StarCheck { rank: r, expected, ok: r == expected })
}

/// A random 2-connected plane graph with about `target` vertices: a cycle of
/// random length grown by ears, each drawn inside one face between two
/// distinct vertices of its boundary. No parallel edges are created.
pub fn random_two_connected_plane_graph(target: usize, rng: &mut impl Rng) -> Graph {
    let start = rng.gen_range(3..=target.clamp(3, 6));
    let mut g = named::cycle(start);
    let mut guard = 0;
    while g.vertex_count() < target && guard < 10 * target {
        guard += 1;
        let rot = planar_embedding(&g).expect("ears keep the graph planar");
        let emb = trace_faces(&g, &rot).expect("valid rotation");
        let f = &emb.faces[rng.gen_range(0..emb.face_count())];
        let vs = f.vertices(&g);
        let (i, j) = (rng.gen_range(0..vs.len()), rng.gen_range(0..vs.len()));
        let (a, b) = (vs[i], vs[j]);
        if a == b {
            continue;
        }
        let room = target - g.vertex_count();
        let mut inner = rng.gen_range(0..=room.min(3));
        if inner == 0 && g.edge_between(a, b).is_some() {
            if room == 0 {
                break;
            }
            inner = 1;
        }
        let mut prev = a;
        for _ in 0..inner {
            let x = g.add_vertex();
            g.add_edge(prev, x);
            prev = x;
        }
        g.add_edge(prev, b);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn planar(g: &Graph) -> Embedding {
        trace_faces(g, &planar_embedding(g).unwrap()).unwrap()
    }

    /// Face whose vertex set is exactly `vs`.
    fn face_with(g: &Graph, emb: &Embedding, vs: &[Vertex]) -> usize {
        emb.faces
            .iter()
            .position(|f| {
                let mut a = f.vertices(g);
                a.sort();
                a == vs
            })
            .unwrap()
    }

    #[test]
    fn cube_equator_separates_top_and_bottom() {
        // named::cube: vertex i adjacent to i ^ 1, i ^ 2, i ^ 4.
        let g = named::cube();
        let emb = planar(&g);
        let top = face_with(&g, &emb, &[0, 1, 2, 3]);
        let bottom = face_with(&g, &emb, &[4, 5, 6, 7]);
        let hexagon = [(1, 3), (3, 2), (2, 6), (6, 4), (4, 5), (5, 1)];
        let cyc = EdgeVector::from_edges(g.edge_count(), hexagon.iter().map(|&(a, b)| g.edge_between(a, b).unwrap()));
        assert!(is_single_cycle(&g, &cyc));
        assert_eq!(crossing_parity(&g, &emb, &cyc, top, bottom).unwrap(), 1);
        assert_eq!(crossing_parity_flood(&g, &emb, &cyc, top, bottom).unwrap(), 1);
        let side = face_with(&g, &emb, &[0, 1, 4, 5]);
        let boundary = face_boundary(&g, &emb, side);
        assert_eq!(crossing_parity(&g, &emb, &boundary, top, bottom).unwrap(), 0);
        let sep = separating_cycle_between_faces(&g, &emb, top, bottom).unwrap();
        assert_eq!(crossing_parity_flood(&g, &emb, &sep.cycle, top, bottom).unwrap(), 1);
        assert_eq!(sep.method, SeparationMethod::PathDetour);
    }

    #[test]
    fn triangle_and_sums() {
        let g = named::cycle(3);
        let emb = planar(&g);
        let c = EdgeVector::from_edges(3, 0..3);
        assert_eq!(crossing_parity(&g, &emb, &c, 0, 1).unwrap(), 1);
        let sep = separating_cycle_between_faces(&g, &emb, 0, 1).unwrap();
        assert_eq!(sep.edges, vec![0, 1, 2]);
        assert!(matches!(crossing_parity(&g, &emb, &EdgeVector::from_edges(3, [0]), 0, 1), Err(CycleCutError::NotACycle)));

        // Two adjacent side squares of the cube sum to a hexagon.
        let g = named::cube();
        let emb = planar(&g);
        let top = face_with(&g, &emb, &[0, 1, 2, 3]);
        let bottom = face_with(&g, &emb, &[4, 5, 6, 7]);
        let s1 = face_boundary(&g, &emb, face_with(&g, &emb, &[0, 1, 4, 5]));
        let s2 = face_boundary(&g, &emb, face_with(&g, &emb, &[0, 2, 4, 6]));
        let ledger = sep_sum_check(&g, &emb, top, bottom, &[s1, s2]).unwrap();
        assert_eq!(ledger.parities, vec![0, 0]);
        assert!(ledger.sum_is_cycle);
        assert_eq!(ledger.sum_parity, Some(0));
        assert!(!ledger.violation);
    }

    #[test]
    fn rank_and_stars() {
        use crate::cayley::{build_cayley, cyclic};
        let z4 = cyclic(4);
        let c4 = build_cayley(&z4, &[("a".into(), 1)]).unwrap();
        assert_eq!(star_generation_check(&c4).unwrap(), StarCheck { rank: 3, expected: 3, ok: true });
        let z2 = cyclic(2);
        let k2 = build_cayley(&z2, &[("b".into(), 1)]).unwrap();
        assert_eq!(star_generation_check(&k2).unwrap().rank, 1);
        let v = EdgeVector::from_edges(130, [0, 64, 129]);
        assert_eq!(v.support(), vec![0, 64, 129]);
        assert_eq!(rank(&[v.clone(), v.clone(), EdgeVector::zeros(130)]), 1);
    }

    #[test]
    fn random_plane_graphs_are_two_connected() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let g = random_two_connected_plane_graph(rng.gen_range(4..=30), &mut rng);
            assert!(vertex_connectivity(&g) >= 2);
            assert!(!g.has_parallel_edges_or_loops());
            let emb = planar(&g);
            for f1 in 0..emb.face_count() {
                for f2 in 0..emb.face_count() {
                    if f1 != f2 {
                        let sep = separating_cycle_between_faces(&g, &emb, f1, f2).unwrap();
                        assert_eq!(crossing_parity_flood(&g, &emb, &sep.cycle, f1, f2).unwrap(), 1);
                    }
                }
            }
        }
    }
}
