//! Left-right planarity test (de Fraysseix–Rosenstiehl criterion in the
//! formulation of Brandes), run on the underlying simple graph. Parallel
//! edges and loops are put back into the rotation afterwards. Non-planar
//! inputs get a Kuratowski subdivision found by greedy edge deletion.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{trace_faces, Embedding, EmbeddingError, RotationSystem};
use crate::graph::{Dart, EdgeId, Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

impl std::fmt::Display for KuratowskiKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            KuratowskiKind::K5 => "K5",
            KuratowskiKind::K33 => "K3,3",
        })
    }
}

/// A subdivision of K5 or K3,3 inside a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KuratowskiWitness {
    pub kind: KuratowskiKind,
    pub branch_vertices: Vec<Vertex>,
    /// Vertex sequences joining branch vertices.
    pub paths: Vec<Vec<Vertex>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlanarityResult {
    Planar(Embedding),
    NonPlanar(KuratowskiWitness),
}

impl PlanarityResult {
    pub fn is_planar(&self) -> bool {
        matches!(self, PlanarityResult::Planar(_))
    }
}

// ---------------------------------------------------------------------------
// LR core on a simple graph given by adjacency lists.

const NIL: usize = usize::MAX;

#[derive(Clone, Copy, Debug, Default)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn edge(e: usize) -> Self {
        Self { low: Some(e), high: Some(e) }
    }
    fn empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct Lr<'a> {
    adj: &'a [Vec<Vertex>],
    height: Vec<usize>,
    parent_edge: Vec<Option<usize>>,
    // Oriented edges.
    ends: Vec<(Vertex, Vertex)>,
    oriented: HashMap<(Vertex, Vertex), usize>,
    out: Vec<Vec<usize>>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<i64>,
    reference: Vec<Option<usize>>,
    side: Vec<i64>,
    stack: Vec<ConflictPair>,
    stack_bottom: Vec<usize>,
    lowpt_edge: Vec<usize>,
    roots: Vec<Vertex>,
    // Embedding as cyclic clockwise neighbour lists.
    cw: HashMap<(Vertex, Vertex), Vertex>,
    ccw: HashMap<(Vertex, Vertex), Vertex>,
    first: Vec<Option<Vertex>>,
    left_ref: Vec<Vertex>,
    right_ref: Vec<Vertex>,
}

impl<'a> Lr<'a> {
    fn new(adj: &'a [Vec<Vertex>]) -> Self {
        let n = adj.len();
        Self {
            adj,
            height: vec![NIL; n],
            parent_edge: vec![None; n],
            ends: Vec::new(),
            oriented: HashMap::new(),
            out: vec![Vec::new(); n],
            lowpt: Vec::new(),
            lowpt2: Vec::new(),
            nesting: Vec::new(),
            reference: Vec::new(),
            side: Vec::new(),
            stack: Vec::new(),
            stack_bottom: Vec::new(),
            lowpt_edge: Vec::new(),
            roots: Vec::new(),
            cw: HashMap::new(),
            ccw: HashMap::new(),
            first: vec![None; n],
            left_ref: vec![NIL; n],
            right_ref: vec![NIL; n],
        }
    }

    fn run(mut self) -> Option<Vec<Vec<Vertex>>> {
        let n = self.adj.len();
        let m: usize = self.adj.iter().map(Vec::len).sum::<usize>() / 2;
        if n > 2 && m > 3 * n - 6 {
            return None;
        }
        for v in 0..n {
            if self.height[v] == NIL {
                self.height[v] = 0;
                self.roots.push(v);
                self.orient(v);
            }
        }
        for v in 0..n {
            let mut o = std::mem::take(&mut self.out[v]);
            o.sort_by_key(|&e| self.nesting[e]);
            self.out[v] = o;
        }
        for r in self.roots.clone() {
            if !self.test(r) {
                return None;
            }
        }
        for e in 0..self.ends.len() {
            let s = self.sign(e);
            self.nesting[e] *= s;
        }
        for v in 0..n {
            let mut o = std::mem::take(&mut self.out[v]);
            o.sort_by_key(|&e| self.nesting[e]);
            let mut prev = None;
            for &e in &o {
                let w = self.ends[e].1;
                self.add_cw(v, w, prev);
                prev = Some(w);
            }
            self.out[v] = o;
        }
        for r in self.roots.clone() {
            self.embed(r);
        }
        let mut rot = vec![Vec::new(); n];
        for (v, r) in rot.iter_mut().enumerate() {
            if let Some(f) = self.first[v] {
                let mut w = f;
                loop {
                    r.push(w);
                    w = self.cw[&(v, w)];
                    if w == f {
                        break;
                    }
                }
            }
        }
        Some(rot)
    }

    fn orient(&mut self, v: Vertex) {
        let e = self.parent_edge[v];
        for i in 0..self.adj[v].len() {
            let w = self.adj[v][i];
            if self.oriented.contains_key(&(v, w)) || self.oriented.contains_key(&(w, v)) {
                continue;
            }
            let vw = self.ends.len();
            self.ends.push((v, w));
            self.oriented.insert((v, w), vw);
            self.out[v].push(vw);
            self.lowpt.push(self.height[v]);
            self.lowpt2.push(self.height[v]);
            self.nesting.push(0);
            self.reference.push(None);
            self.side.push(1);
            self.stack_bottom.push(0);
            self.lowpt_edge.push(NIL);
            if self.height[w] == NIL {
                self.parent_edge[w] = Some(vw);
                self.height[w] = self.height[v] + 1;
                self.orient(w);
            } else {
                self.lowpt[vw] = self.height[w];
            }
            self.nesting[vw] = 2 * self.lowpt[vw] as i64;
            if self.lowpt2[vw] < self.height[v] {
                self.nesting[vw] += 1;
            }
            if let Some(e) = e {
                if self.lowpt[vw] < self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                    self.lowpt[e] = self.lowpt[vw];
                } else if self.lowpt[vw] > self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                } else {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                }
            }
        }
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        !i.empty() && i.high.is_some_and(|h| self.lowpt[h] > self.lowpt[b])
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        match (p.left.low, p.right.low) {
            (None, Some(r)) => self.lowpt[r],
            (Some(l), None) => self.lowpt[l],
            (Some(l), Some(r)) => self.lowpt[l].min(self.lowpt[r]),
            (None, None) => NIL,
        }
    }

    fn test(&mut self, v: Vertex) -> bool {
        let e = self.parent_edge[v];
        let out = self.out[v].clone();
        for &ei in &out {
            let w = self.ends[ei].1;
            self.stack_bottom[ei] = self.stack.len();
            if self.parent_edge[w] == Some(ei) {
                if !self.test(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = ei;
                self.stack.push(ConflictPair { left: Interval::default(), right: Interval::edge(ei) });
            }
            if self.lowpt[ei] < self.height[v] {
                let e = e.expect("a root has no return edges");
                if ei == out[0] {
                    self.lowpt_edge[e] = self.lowpt_edge[ei];
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        if let Some(e) = e {
            self.remove_back_edges(e);
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::default();
        loop {
            let Some(mut q) = self.stack.pop() else { break };
            if !q.left.empty() {
                q.swap();
            }
            if !q.left.empty() {
                return false;
            }
            let qrl = q.right.low.expect("non-empty right interval");
            if self.lowpt[qrl] > self.lowpt[e] {
                if p.right.empty() {
                    p.right = q.right;
                } else if let Some(prl) = p.right.low {
                    self.reference[prl] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[qrl] = Some(self.lowpt_edge[e]);
            }
            if self.stack.len() <= self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(prl) = p.right.low {
                self.reference[prl] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.empty() {
                p.left = q.left;
            } else if let Some(pll) = p.left.low {
                self.reference[pll] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.empty() && p.right.empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.ends[e].0;
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().unwrap();
            if let Some(l) = p.left.low {
                self.side[l] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.ends[h].1 != u {
                    break;
                }
                p.left.high = self.reference[h];
            }
            if p.left.high.is_none() {
                if let Some(l) = p.left.low {
                    self.reference[l] = p.right.low;
                    self.side[l] = -1;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.ends[h].1 != u {
                    break;
                }
                p.right.high = self.reference[h];
            }
            if p.right.high.is_none() {
                if let Some(r) = p.right.low {
                    self.reference[r] = p.left.low;
                    self.side[r] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            if let Some(top) = self.stack.last() {
                let (hl, hr) = (top.left.high, top.right.high);
                self.reference[e] = match (hl, hr) {
                    (Some(l), None) => Some(l),
                    (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                    _ => hr,
                };
            }
        }
    }

    fn sign(&mut self, e: usize) -> i64 {
        let mut chain = Vec::new();
        let mut cur = e;
        while let Some(r) = self.reference[cur] {
            chain.push(cur);
            cur = r;
        }
        for &x in chain.iter().rev() {
            let r = self.reference[x].take().unwrap();
            self.side[x] *= self.side[r];
        }
        self.side[e]
    }

    fn add_cw(&mut self, start: Vertex, end: Vertex, reference: Option<Vertex>) {
        match reference {
            None => {
                self.cw.insert((start, end), end);
                self.ccw.insert((start, end), end);
                self.first[start] = Some(end);
            }
            Some(r) => {
                let cw_ref = self.cw[&(start, r)];
                self.cw.insert((start, r), end);
                self.cw.insert((start, end), cw_ref);
                self.ccw.insert((start, cw_ref), end);
                self.ccw.insert((start, end), r);
            }
        }
    }

    fn add_ccw(&mut self, start: Vertex, end: Vertex, reference: Option<Vertex>) {
        match reference {
            None => self.add_cw(start, end, None),
            Some(r) => {
                let ccw_ref = self.ccw[&(start, r)];
                self.add_cw(start, end, Some(ccw_ref));
                if self.first[start] == Some(r) {
                    self.first[start] = Some(end);
                }
            }
        }
    }

    fn add_first(&mut self, start: Vertex, end: Vertex) {
        match self.first[start] {
            Some(f) => self.add_ccw(start, end, Some(f)),
            None => self.add_cw(start, end, None),
        }
        self.first[start] = Some(end);
    }

    fn embed(&mut self, v: Vertex) {
        let out = self.out[v].clone();
        for ei in out {
            let w = self.ends[ei].1;
            if self.parent_edge[w] == Some(ei) {
                self.add_first(w, v);
                self.left_ref[v] = w;
                self.right_ref[v] = w;
                self.embed(w);
            } else if self.side[ei] == 1 {
                let r = self.right_ref[w];
                self.add_cw(w, v, Some(r));
            } else {
                let r = self.left_ref[w];
                self.add_ccw(w, v, Some(r));
                self.left_ref[w] = v;
            }
        }
    }
}

/// Cyclic neighbour order of a planar embedding of the simple graph given by
/// `adj`, or `None` if it is not planar.
fn lr_planarity(adj: &[Vec<Vertex>]) -> Option<Vec<Vec<Vertex>>> {
    if adj.len() <= 2000 {
        Lr::new(adj).run()
    } else {
        // Deep graphs recurse deeply; give the search a larger stack.
        std::thread::scope(|s| {
            std::thread::Builder::new()
                .stack_size(64 << 20)
                .spawn_scoped(s, || Lr::new(adj).run())
                .expect("spawn planarity thread")
                .join()
                .expect("planarity thread panicked")
        })
    }
}

/// Lifts a neighbour rotation of the simple graph to a dart rotation of the
/// multigraph: parallel edges sit next to their representative (in edge
/// order at the lower endpoint, reversed at the other) and each loop
/// contributes two consecutive darts.
fn lift_rotation(g: &Graph, simple_rot: &[Vec<Vertex>]) -> RotationSystem {
    let n = g.vertex_count();
    let mut bundles: HashMap<(Vertex, Vertex), Vec<EdgeId>> = HashMap::new();
    let mut loops: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if u == v {
            loops[u].push(e);
        } else {
            bundles.entry((u.min(v), u.max(v))).or_default().push(e);
        }
    }
    let dart_from = |e: EdgeId, v: Vertex| -> Dart {
        if g.endpoints(e).0 == v {
            2 * e
        } else {
            2 * e + 1
        }
    };
    let mut order = vec![Vec::new(); n];
    for v in 0..n {
        for &w in &simple_rot[v] {
            let bundle = &bundles[&(v.min(w), v.max(w))];
            if v < w {
                order[v].extend(bundle.iter().map(|&e| dart_from(e, v)));
            } else {
                order[v].extend(bundle.iter().rev().map(|&e| dart_from(e, v)));
            }
        }
        for &e in &loops[v] {
            order[v].push(2 * e);
            order[v].push(2 * e + 1);
        }
    }
    RotationSystem { order }
}

/// A genus-0 rotation system of `g`, if `g` is planar.
pub fn planar_embedding(g: &Graph) -> Option<RotationSystem> {
    let adj = g.simple_adjacency();
    lr_planarity(&adj).map(|r| lift_rotation(g, &r))
}

pub fn is_planar(g: &Graph) -> bool {
    lr_planarity(&g.simple_adjacency()).is_some()
}

/// Planarity test with certificates: a traced genus-0 embedding, or a
/// Kuratowski subdivision.
pub fn planarity_test(g: &Graph) -> Result<PlanarityResult, EmbeddingError> {
    match planar_embedding(g) {
        Some(rot) => {
            let emb = trace_faces(g, &rot)?;
            if emb.genus != 0 {
                return Err(EmbeddingError::NotPlanar(emb.genus));
            }
            Ok(PlanarityResult::Planar(emb))
        }
        None => Ok(PlanarityResult::NonPlanar(
            kuratowski_witness(g).expect("a non-planar graph contains a Kuratowski subdivision"),
        )),
    }
}

/// Kuratowski subdivision of a non-planar graph, or `None` if `g` is planar.
///
/// Edges of the underlying simple graph are deleted greedily while the rest
/// stays non-planar; what survives is an edge-minimal non-planar subgraph,
/// which is a subdivision of K5 or K3,3.
pub fn kuratowski_witness(g: &Graph) -> Option<KuratowskiWitness> {
    let n = g.vertex_count();
    let mut edges: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    for &(u, v) in g.edges() {
        if u != v {
            edges.insert((u.min(v), u.max(v)));
        }
    }
    let adjacency = |edges: &BTreeSet<(Vertex, Vertex)>| {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    };
    if lr_planarity(&adjacency(&edges)).is_some() {
        return None;
    }
    for e in edges.clone() {
        edges.remove(&e);
        if lr_planarity(&adjacency(&edges)).is_some() {
            edges.insert(e);
        }
    }
    let adj = adjacency(&edges);
    let branch: Vec<Vertex> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    let kind = match branch.len() {
        5 => KuratowskiKind::K5,
        6 => KuratowskiKind::K33,
        _ => return None,
    };
    let is_branch = |v: Vertex| adj[v].len() >= 3;
    let mut paths = Vec::new();
    for &b in &branch {
        for &first in &adj[b] {
            let mut path = vec![b, first];
            let (mut prev, mut cur) = (b, first);
            while !is_branch(cur) {
                let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                path.push(next);
                prev = cur;
                cur = next;
            }
            if b < cur || (b == cur && path[1] < path[path.len() - 2]) {
                paths.push(path);
            }
        }
    }
    paths.sort();
    Some(KuratowskiWitness { kind, branch_vertices: branch, paths })
}

/// Checks a witness against `g` without trusting how it was produced.
pub fn verify_witness(g: &Graph, w: &KuratowskiWitness) -> Result<(), String> {
    let branch: BTreeSet<Vertex> = w.branch_vertices.iter().copied().collect();
    if branch.len() != w.branch_vertices.len() {
        return Err("repeated branch vertex".into());
    }
    let (nb, np) = match w.kind {
        KuratowskiKind::K5 => (5, 10),
        KuratowskiKind::K33 => (6, 9),
    };
    if branch.len() != nb || w.paths.len() != np {
        return Err(format!("{} needs {nb} branch vertices and {np} paths", w.kind));
    }
    let mut used_interior = BTreeSet::new();
    let mut pairs = BTreeSet::new();
    for p in &w.paths {
        if p.len() < 2 {
            return Err("path too short".into());
        }
        for pair in p.windows(2) {
            if pair[0] == pair[1] || g.edge_between(pair[0], pair[1]).is_none() {
                return Err(format!("{} and {} are not adjacent", pair[0], pair[1]));
            }
        }
        let (a, b) = (p[0], p[p.len() - 1]);
        if !branch.contains(&a) || !branch.contains(&b) || a == b {
            return Err("path endpoints must be two distinct branch vertices".into());
        }
        for &x in &p[1..p.len() - 1] {
            if branch.contains(&x) {
                return Err(format!("branch vertex {x} inside a path"));
            }
            if !used_interior.insert(x) {
                return Err(format!("paths are not internally disjoint at {x}"));
            }
        }
        if !pairs.insert((a.min(b), a.max(b))) {
            return Err("two paths join the same branch pair".into());
        }
    }
    match w.kind {
        KuratowskiKind::K5 => Ok(()),
        KuratowskiKind::K33 => {
            let bv: Vec<Vertex> = branch.iter().copied().collect();
            let mut colour: HashMap<Vertex, u8> = HashMap::new();
            colour.insert(bv[0], 0);
            let mut changed = true;
            while changed {
                changed = false;
                for &(a, b) in &pairs {
                    match (colour.get(&a).copied(), colour.get(&b).copied()) {
                        (Some(x), None) => {
                            colour.insert(b, 1 - x);
                            changed = true;
                        }
                        (None, Some(x)) => {
                            colour.insert(a, 1 - x);
                            changed = true;
                        }
                        (Some(x), Some(y)) if x == y => return Err("branch graph is not bipartite".into()),
                        _ => {}
                    }
                }
            }
            let side0 = bv.iter().filter(|v| colour.get(v) == Some(&0)).count();
            let side1 = bv.iter().filter(|v| colour.get(v) == Some(&1)).count();
            if side0 == 3 && side1 == 3 {
                Ok(())
            } else {
                Err("branch graph is not K3,3".into())
            }
        }
    }
}
