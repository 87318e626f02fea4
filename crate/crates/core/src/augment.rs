//! Vertex connectivity by unit-capacity max flow, and ladder augmentation of
//! plane graphs to 3-connected supergraphs.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::{trace_faces, Embedding, EmbeddingError, RotationSystem};
use crate::graph::{reverse, Dart, Graph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AugmentError {
    #[error("ladder augmentation needs a planar embedding, got genus {0}")]
    NotPlanar(usize),
    #[error("ladder augmentation needs a connected graph")]
    Disconnected,
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

/// Residual network for unit vertex capacities: vertex `v` splits into
/// `2v` (in) and `2v + 1` (out).
struct FlowNet {
    head: Vec<usize>,
    cap: Vec<i32>,
    adj: Vec<Vec<usize>>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        Self { head: Vec::new(), cap: Vec::new(), adj: vec![Vec::new(); nodes] }
    }

    fn arc(&mut self, u: usize, v: usize, c: i32) {
        self.adj[u].push(self.head.len());
        self.head.push(v);
        self.cap.push(c);
        self.adj[v].push(self.head.len());
        self.head.push(u);
        self.cap.push(0);
    }

    /// Augments along shortest paths until `limit` units flow or none remain.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        while flow < limit {
            let mut via = vec![usize::MAX; self.adj.len()];
            let mut queue = VecDeque::from([s]);
            let mut seen = vec![false; self.adj.len()];
            seen[s] = true;
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for &a in &self.adj[u] {
                    let v = self.head[a];
                    if self.cap[a] > 0 && !seen[v] {
                        seen[v] = true;
                        via[v] = a;
                        queue.push_back(v);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut v = t;
            while v != s {
                let a = via[v];
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                v = self.head[a ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

/// Maximum number of internally disjoint `s`–`t` paths, capped at `limit`,
/// for non-adjacent `s != t`.
pub fn local_vertex_connectivity(adj: &[Vec<Vertex>], s: Vertex, t: Vertex, limit: usize) -> usize {
    let n = adj.len();
    let big = n as i32 + 1;
    let mut net = FlowNet::new(2 * n);
    for v in 0..n {
        let c = if v == s || v == t { big } else { 1 };
        net.arc(2 * v, 2 * v + 1, c);
        for &w in &adj[v] {
            net.arc(2 * v + 1, 2 * w, big);
        }
    }
    net.max_flow(2 * s + 1, 2 * t, limit)
}

/// Vertex connectivity of the underlying simple graph (Even's algorithm).
/// `K_n` gives `n − 1`; a disconnected graph gives 0.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.vertex_count();
    if n <= 1 {
        return 0;
    }
    if !g.is_connected() {
        return 0;
    }
    let adj = g.simple_adjacency();
    let mut k = adj.iter().map(Vec::len).min().unwrap_or(0);
    let mut i = 0;
    while i < n && i <= k {
        let mut adjacent = vec![false; n];
        for &w in &adj[i] {
            adjacent[w] = true;
        }
        for j in 0..n {
            if j != i && !adjacent[j] {
                k = k.min(local_vertex_connectivity(&adj, i, j, k));
            }
        }
        i += 1;
    }
    k
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderReport {
    /// Indices (in the input embedding) of faces that received a copy.
    pub augmented_faces: Vec<usize>,
    /// Faces of length at most two.
    pub skipped_short: Vec<usize>,
    /// Faces meeting the frontier of a truncated ball.
    pub skipped_frontier: Vec<usize>,
    /// Total boundary length of augmented faces.
    pub boundary_total: usize,
}

/// Inserts into every facial walk `F` of length > 2 a copy `C'` of `∂F`
/// inside the face, joined to `∂F` by a perfect matching. Faces meeting a
/// frontier vertex (when `frontier` is given) are left alone.
///
/// Returns the supergraph, its embedding and which faces were used. Old
/// vertex, edge and dart ids are unchanged.
pub fn ladder_augment(
    g: &Graph,
    emb: &Embedding,
    frontier: Option<&[bool]>,
) -> Result<(Graph, Embedding, LadderReport), AugmentError> {
    if emb.genus != 0 {
        return Err(AugmentError::NotPlanar(emb.genus));
    }
    if !g.is_connected() {
        return Err(AugmentError::Disconnected);
    }
    let mut out = g.clone();
    let mut report = LadderReport {
        augmented_faces: Vec::new(),
        skipped_short: Vec::new(),
        skipped_frontier: Vec::new(),
        boundary_total: 0,
    };
    // Dart inserted right after a given old dart at its tail.
    let mut after: HashMap<Dart, Dart> = HashMap::new();
    let mut copy_rotations: Vec<Vec<Dart>> = Vec::new();
    for (fi, face) in emb.faces.iter().enumerate() {
        let k = face.len();
        if k <= 2 {
            report.skipped_short.push(fi);
            continue;
        }
        if let Some(fr) = frontier {
            if face.darts.iter().any(|&d| fr[g.tail(d)]) {
                report.skipped_frontier.push(fi);
                continue;
            }
        }
        report.augmented_faces.push(fi);
        report.boundary_total += k;
        let copies: Vec<Vertex> = (0..k).map(|_| out.add_vertex()).collect();
        let matching: Vec<usize> = (0..k).map(|j| out.add_edge(g.tail(face.darts[j]), copies[j])).collect();
        let ring: Vec<usize> = (0..k).map(|j| out.add_edge(copies[j], copies[(j + 1) % k])).collect();
        for j in 0..k {
            let prev = face.darts[(j + k - 1) % k];
            after.insert(reverse(prev), 2 * matching[j]);
            let forward = 2 * ring[j];
            let backward = 2 * ring[(j + k - 1) % k] + 1;
            copy_rotations.push(vec![forward, 2 * matching[j] + 1, backward]);
        }
    }
    let mut order: Vec<Vec<Dart>> = emb
        .rotation
        .order
        .iter()
        .map(|r| {
            let mut v = Vec::with_capacity(r.len());
            for &d in r {
                v.push(d);
                if let Some(&m) = after.get(&d) {
                    v.push(m);
                }
            }
            v
        })
        .collect();
    order.extend(copy_rotations);
    let new_emb = trace_faces(&out, &RotationSystem { order })?;
    Ok((out, new_emb, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::planar_embedding;
    use crate::graph::named;

    fn planar(g: &Graph) -> Embedding {
        trace_faces(g, &planar_embedding(g).unwrap()).unwrap()
    }

    #[test]
    fn connectivity_of_named_graphs() {
        assert_eq!(vertex_connectivity(&named::complete(4)), 3);
        assert_eq!(vertex_connectivity(&named::complete(6)), 5);
        assert_eq!(vertex_connectivity(&named::cycle(6)), 2);
        assert_eq!(vertex_connectivity(&named::path(4)), 1);
        assert_eq!(vertex_connectivity(&named::cube()), 3);
        assert_eq!(vertex_connectivity(&named::petersen()), 3);
        assert_eq!(vertex_connectivity(&named::complete_bipartite(3, 4)), 3);
        assert_eq!(vertex_connectivity(&Graph::from_edges(4, &[(0, 1), (2, 3)])), 0);
    }

    #[test]
    fn connectivity_matches_bruteforce_separators() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let n = rng.gen_range(2..=8);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.55) {
                        g.add_edge(u, v);
                    }
                }
            }
            // Smallest vertex set whose removal disconnects, or n - 1.
            let mut best = n - 1;
            for mask in 0u32..(1 << n) {
                let size = mask.count_ones() as usize;
                if size >= best || size + 2 > n {
                    continue;
                }
                let (c, _) = g.components_where(|v| mask >> v & 1 == 0);
                if c > 1 {
                    best = size;
                }
            }
            assert_eq!(vertex_connectivity(&g), best, "edges {:?}", g.edges());
        }
    }

    #[test]
    fn ladder_counts() {
        for (g, v, e) in [(named::cycle(4), 12, 20), (named::complete(4), 16, 30), (named::cycle(3), 9, 15)] {
            let emb = planar(&g);
            let (h, hemb, _) = ladder_augment(&g, &emb, None).unwrap();
            assert_eq!((h.vertex_count(), h.edge_count()), (v, e));
            assert_eq!(hemb.genus, 0);
            assert!(hemb.check_euler(&h));
            assert!(vertex_connectivity(&h) >= 3);
        }
    }
}
