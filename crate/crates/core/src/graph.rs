//! Finite undirected multigraphs in dart form.
//!
//! Every edge `e = (tail, head)` owns two darts: `2e` runs tail to head and
//! `2e + 1` runs head to tail. A loop therefore contributes two darts at its
//! single vertex, and parallel edges get distinct darts, which is all the
//! rotation-system machinery needs.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

/// Index of a vertex.
pub type Vertex = usize;
/// Index of an edge.
pub type EdgeId = usize;
/// Index of a dart; `dart / 2` is its edge.
pub type Dart = usize;

#[inline]
pub fn edge_of(d: Dart) -> EdgeId {
    d / 2
}

#[inline]
pub fn reverse(d: Dart) -> Dart {
    d ^ 1
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(Vertex, Vertex)>,
    #[serde(skip)]
    out_darts: Vec<Vec<Dart>>,
}

impl Graph {
    pub fn new(vertex_count: usize) -> Self {
        Self {
            vertex_count,
            edges: Vec::new(),
            out_darts: vec![Vec::new(); vertex_count],
        }
    }

    pub fn from_edges(vertex_count: usize, edges: &[(Vertex, Vertex)]) -> Self {
        let mut g = Self::new(vertex_count);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.vertex_count += 1;
        self.out_darts.push(Vec::new());
        self.vertex_count - 1
    }

    pub fn add_edge(&mut self, tail: Vertex, head: Vertex) -> EdgeId {
        assert!(tail < self.vertex_count && head < self.vertex_count, "edge endpoint out of range");
        let e = self.edges.len();
        self.edges.push((tail, head));
        self.out_darts[tail].push(2 * e);
        self.out_darts[head].push(2 * e + 1);
        e
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn dart_count(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    pub fn tail(&self, d: Dart) -> Vertex {
        let (u, v) = self.edges[edge_of(d)];
        if d % 2 == 0 {
            u
        } else {
            v
        }
    }

    pub fn head(&self, d: Dart) -> Vertex {
        self.tail(reverse(d))
    }

    /// Darts leaving `v`, in increasing dart order.
    pub fn darts_at(&self, v: Vertex) -> &[Dart] {
        &self.out_darts[v]
    }

    /// Number of dart slots at `v`; a loop counts twice.
    pub fn degree(&self, v: Vertex) -> usize {
        self.out_darts[v].len()
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let (u, v) = self.edges[e];
        u == v
    }

    /// Neighbours of `v` without repetition, loops excluded, sorted.
    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        let mut n: Vec<Vertex> = self.out_darts[v]
            .iter()
            .map(|&d| self.head(d))
            .filter(|&w| w != v)
            .collect();
        n.sort_unstable();
        n.dedup();
        n
    }

    /// Adjacency lists of the underlying simple graph.
    pub fn simple_adjacency(&self) -> Vec<Vec<Vertex>> {
        (0..self.vertex_count).map(|v| self.neighbors(v)).collect()
    }

    pub fn has_parallel_edges_or_loops(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        for &(u, v) in &self.edges {
            if u == v || !seen.insert((u.min(v), u.max(v))) {
                return true;
            }
        }
        false
    }

    /// Breadth-first distances from `source`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, source: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &d in &self.out_darts[u] {
                let w = self.head(d);
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Component index per vertex, numbered in order of least vertex.
    pub fn components(&self) -> (usize, Vec<usize>) {
        self.components_where(|_| true)
    }

    /// Components of the subgraph induced by the vertices accepted by `keep`.
    /// Rejected vertices get `usize::MAX`.
    pub fn components_where(&self, keep: impl Fn(Vertex) -> bool) -> (usize, Vec<usize>) {
        let mut comp = vec![usize::MAX; self.vertex_count];
        let mut count = 0;
        for s in 0..self.vertex_count {
            if comp[s] != usize::MAX || !keep(s) {
                continue;
            }
            comp[s] = count;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &d in &self.out_darts[u] {
                    let w = self.head(d);
                    if comp[w] == usize::MAX && keep(w) {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (count, comp)
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count == 0 || self.components().0 == 1
    }

    /// Shortest path (as a vertex sequence) from any vertex in `sources` to any
    /// vertex in `targets`, avoiding vertices rejected by `allowed`. Ties are
    /// broken towards smaller vertex and dart indices.
    pub fn shortest_path(
        &self,
        sources: &[Vertex],
        targets: &[Vertex],
        allowed: impl Fn(Vertex) -> bool,
    ) -> Option<Vec<Vertex>> {
        let mut is_target = vec![false; self.vertex_count];
        for &t in targets {
            is_target[t] = true;
        }
        let mut parent: Vec<Option<Vertex>> = vec![None; self.vertex_count];
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::new();
        let mut srcs: Vec<Vertex> = sources.iter().copied().filter(|&s| allowed(s)).collect();
        srcs.sort_unstable();
        srcs.dedup();
        for s in srcs {
            seen[s] = true;
            queue.push_back(s);
        }
        while let Some(u) = queue.pop_front() {
            if is_target[u] {
                let mut path = vec![u];
                let mut cur = u;
                while let Some(p) = parent[cur] {
                    path.push(p);
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
            for &d in &self.out_darts[u] {
                let w = self.head(d);
                if !seen[w] && allowed(w) {
                    seen[w] = true;
                    parent[w] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Least-index edge joining `u` and `v`, if any.
    pub fn edge_between(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        self.out_darts[u]
            .iter()
            .find(|&&d| self.head(d) == v)
            .map(|&d| edge_of(d))
    }

    /// Dart from `u` to `v` along the least-index joining edge.
    pub fn dart_between(&self, u: Vertex, v: Vertex) -> Option<Dart> {
        self.out_darts[u].iter().copied().find(|&d| self.head(d) == v)
    }

    /// Subgraph induced on `vertices` (listed order becomes the new numbering),
    /// together with the map from new edge ids to old ones.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> (Graph, Vec<EdgeId>) {
        let mut index = vec![usize::MAX; self.vertex_count];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut sub = Graph::new(vertices.len());
        let mut origin = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if index[u] != usize::MAX && index[v] != usize::MAX {
                sub.add_edge(index[u], index[v]);
                origin.push(e);
            }
        }
        (sub, origin)
    }

    /// Graph with the same vertices and only the edges accepted by `keep`;
    /// returns the map from new edge ids to old ones.
    pub fn edge_subgraph(&self, keep: impl Fn(EdgeId) -> bool) -> (Graph, Vec<EdgeId>) {
        let mut sub = Graph::new(self.vertex_count);
        let mut origin = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if keep(e) {
                sub.add_edge(u, v);
                origin.push(e);
            }
        }
        (sub, origin)
    }

    /// Rebuilds the dart index after deserialization.
    pub fn rebuild_index(&mut self) {
        self.out_darts = vec![Vec::new(); self.vertex_count];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            self.out_darts[u].push(2 * e);
            self.out_darts[v].push(2 * e + 1);
        }
    }
}

/// Small named graphs used throughout the tests and the CLI corpus.
pub mod named {
    use super::Graph;

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Graph::from_edges(n, &edges)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..a {
            for j in 0..b {
                edges.push((i, a + j));
            }
        }
        Graph::from_edges(a + b, &edges)
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges)
    }

    /// The 3-cube: vertices are 3-bit strings, edges flip one bit.
    pub fn cube() -> Graph {
        let mut edges = Vec::new();
        for v in 0..8usize {
            for bit in 0..3 {
                let w = v ^ (1 << bit);
                if v < w {
                    edges.push((v, w));
                }
            }
        }
        Graph::from_edges(8, &edges)
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn darts_and_loops() {
        let mut g = Graph::new(2);
        let e = g.add_edge(0, 1);
        let l = g.add_edge(1, 1);
        assert_eq!(g.tail(2 * e), 0);
        assert_eq!(g.head(2 * e), 1);
        assert_eq!(g.darts_at(1), &[1, 2 * l, 2 * l + 1]);
        assert_eq!(g.degree(1), 3);
        assert!(g.is_loop(l));
        assert_eq!(g.neighbors(1), vec![0]);
    }

    #[test]
    fn components_and_paths() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 4)]);
        let (n, comp) = g.components();
        assert_eq!(n, 2);
        assert_eq!(comp, vec![0, 0, 0, 1, 1]);
        assert_eq!(g.shortest_path(&[0], &[2], |_| true), Some(vec![0, 1, 2]));
        assert_eq!(g.shortest_path(&[0], &[2], |v| v != 1), None);
        assert_eq!(g.shortest_path(&[0], &[4], |_| true), None);
    }

    #[test]
    fn named_graph_sizes() {
        assert_eq!(named::cube().edge_count(), 12);
        assert_eq!(named::complete(5).edge_count(), 10);
        assert_eq!(named::complete_bipartite(3, 3).edge_count(), 9);
        assert_eq!(named::petersen().edge_count(), 15);
    }
}
