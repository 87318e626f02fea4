//! Group actions on graphs: freeness, the blow-up trick, and Babai's
//! contraction of a fundamental domain.
//!
//! Free actions are conveniently described by voltage graphs: a quotient
//! graph whose edges carry group elements. [`VoltageGraph::lift`] turns one
//! into an explicit [`GraphAction`], and subdivision and blow-up on the
//! quotient lift to equivariant operations on the cover.

use std::collections::{BTreeMap, HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cayley::{CayleyGraph, GeneratorInfo};
use crate::covariance::left_dart_map;
use crate::graph::{edge_of, Dart, EdgeId, Graph, Vertex};
use crate::group::GroupModel;
use crate::embedding::RotationSystem;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error("action is not free: {element} fixes vertex {vertex}")]
    NotFree { element: String, vertex: Vertex },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("left action needs a complete Cayley graph of a finite group")]
    Truncated,
    #[error("map for {0} is not a permutation")]
    NotPermutation(String),
    #[error("dart map for {element} does not respect incidence at dart {dart}")]
    Incidence { element: String, dart: Dart },
    #[error("action axiom fails: {0}")]
    Axiom(String),
    #[error("vertex {0} is isolated and cannot be blown up")]
    IsolatedVertex(Vertex),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),
    #[error("voltage graph is invalid: {0}")]
    InvalidVoltage(String),
}

/// A finite group acting on a graph by vertex and dart permutations. Element
/// indices follow the group model.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphAction {
    pub group: GroupModel,
    pub graph: Graph,
    pub vertex_perm: Vec<Vec<Vertex>>,
    pub dart_perm: Vec<Vec<Dart>>,
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    if p.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    p.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

impl GraphAction {
    /// Checks that every map is a permutation respecting incidence.
    pub fn new(
        group: GroupModel,
        graph: Graph,
        vertex_perm: Vec<Vec<Vertex>>,
        dart_perm: Vec<Vec<Dart>>,
    ) -> Result<Self, ActionError> {
        let a = Self { group, graph, vertex_perm, dart_perm };
        if a.vertex_perm.len() != a.group.order() || a.dart_perm.len() != a.group.order() {
            return Err(ActionError::Axiom("one permutation per group element required".into()));
        }
        for x in 0..a.group.order() {
            let name = a.group.name(x).to_string();
            if !is_permutation(&a.vertex_perm[x], a.graph.vertex_count())
                || !is_permutation(&a.dart_perm[x], a.graph.dart_count())
            {
                return Err(ActionError::NotPermutation(name));
            }
            for d in 0..a.graph.dart_count() {
                let img = a.dart_perm[x][d];
                if a.graph.tail(img) != a.vertex_perm[x][a.graph.tail(d)]
                    || a.graph.head(img) != a.vertex_perm[x][a.graph.head(d)]
                    || a.dart_perm[x][d ^ 1] != img ^ 1
                {
                    return Err(ActionError::Incidence { element: name, dart: d });
                }
            }
        }
        Ok(a)
    }

    /// Exhaustive check of `π_e = id` and `π_{gh} = π_g ∘ π_h`.
    pub fn check_axioms(&self) -> Result<(), ActionError> {
        let g = &self.group;
        let e = g.identity();
        if self.vertex_perm[e].iter().enumerate().any(|(i, &v)| i != v)
            || self.dart_perm[e].iter().enumerate().any(|(i, &d)| i != d)
        {
            return Err(ActionError::Axiom("identity acts non-trivially".into()));
        }
        let bad = (0..g.order()).into_par_iter().find_map_first(|x| {
            (0..g.order()).find_map(|y| {
                let xy = g.mul(x, y);
                let vert = (0..self.graph.vertex_count())
                    .all(|v| self.vertex_perm[xy][v] == self.vertex_perm[x][self.vertex_perm[y][v]]);
                let dart = (0..self.graph.dart_count())
                    .all(|d| self.dart_perm[xy][d] == self.dart_perm[x][self.dart_perm[y][d]]);
                (!(vert && dart)).then(|| format!("{} * {}", g.name(x), g.name(y)))
            })
        });
        match bad {
            Some(pair) => Err(ActionError::Axiom(format!("composition fails for {pair}"))),
            None => Ok(()),
        }
    }

    /// Vertex permutation of every element, keyed by element name.
    pub fn permutation_table(&self) -> BTreeMap<String, Vec<Vertex>> {
        (0..self.group.order()).map(|x| (self.group.name(x).to_string(), self.vertex_perm[x].clone())).collect()
    }

    /// Orbit index of every vertex; orbits numbered by least member.
    pub fn vertex_orbits(&self) -> Vec<usize> {
        let n = self.graph.vertex_count();
        let mut orbit = vec![usize::MAX; n];
        let mut count = 0;
        for v in 0..n {
            if orbit[v] == usize::MAX {
                for p in &self.vertex_perm {
                    orbit[p[v]] = count;
                }
                count += 1;
            }
        }
        orbit
    }
}

/// Left multiplication on a complete Cayley graph.
pub fn left_action(cg: &CayleyGraph) -> Result<GraphAction, ActionError> {
    let g = match (&cg.group, cg.is_complete()) {
        (Some(g), true) => g.clone(),
        _ => return Err(ActionError::Truncated),
    };
    let vertex_perm = (0..g.order()).map(|x| (0..g.order()).map(|v| g.mul(x, v)).collect()).collect();
    let dart_perm = (0..g.order()).into_par_iter().map(|x| left_dart_map(cg, x)).collect();
    GraphAction::new(g, cg.graph.clone(), vertex_perm, dart_perm)
}

/// A non-identity element together with a vertex it fixes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPoint {
    pub element: usize,
    pub vertex: Vertex,
}

/// `Ok` iff no non-identity element fixes a vertex; otherwise the fixed point
/// with least element, then least vertex.
pub fn is_free(a: &GraphAction) -> Result<(), FixedPoint> {
    let e = a.group.identity();
    for x in 0..a.group.order() {
        if x == e {
            continue;
        }
        if let Some(v) = (0..a.graph.vertex_count()).find(|&v| a.vertex_perm[x][v] == v) {
            return Err(FixedPoint { element: x, vertex: v });
        }
    }
    Ok(())
}

/// Result of replacing vertices by cycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowUp {
    pub graph: Graph,
    /// Rotation of the new graph when one was supplied for the input.
    pub rotation: Option<RotationSystem>,
    /// New id of every old vertex, `None` for blown-up ones.
    pub vertex_map: Vec<Option<Vertex>>,
    /// Cycle vertices replacing each blown-up vertex, in attachment order.
    pub cycles: BTreeMap<Vertex, Vec<Vertex>>,
}

/// Replaces each vertex of `vs` by a cycle of length equal to its degree,
/// each former incidence attaching to its own cycle vertex. Attachments follow
/// the rotation when one is given, dart order otherwise. Old edges keep their
/// ids (so old darts keep theirs); cycle edges are appended.
pub fn blow_up(g: &Graph, vs: &[Vertex], rotation: Option<&RotationSystem>) -> Result<BlowUp, ActionError> {
    let mut blown = vec![false; g.vertex_count()];
    for &v in vs {
        if v >= g.vertex_count() {
            return Err(ActionError::UnknownVertex(v));
        }
        if g.degree(v) == 0 {
            return Err(ActionError::IsolatedVertex(v));
        }
        blown[v] = true;
    }
    let mut vertex_map = vec![None; g.vertex_count()];
    let mut next = 0;
    for v in 0..g.vertex_count() {
        if !blown[v] {
            vertex_map[v] = Some(next);
            next += 1;
        }
    }
    let mut out = Graph::new(next);
    // Cycle vertex receiving each dart of a blown-up vertex.
    let mut dart_home: HashMap<Dart, Vertex> = HashMap::new();
    let mut cycles = BTreeMap::new();
    for v in (0..g.vertex_count()).filter(|&v| blown[v]) {
        let order: Vec<Dart> = match rotation {
            Some(r) => r.order[v].clone(),
            None => g.darts_at(v).to_vec(),
        };
        let cyc: Vec<Vertex> = order
            .iter()
            .map(|&d| {
                let c = out.add_vertex();
                dart_home.insert(d, c);
                c
            })
            .collect();
        cycles.insert(v, cyc);
    }
    let end = |d: Dart| dart_home.get(&d).copied().unwrap_or_else(|| vertex_map[g.tail(d)].unwrap());
    for e in 0..g.edge_count() {
        out.add_edge(end(2 * e), end(2 * e + 1));
    }
    let mut new_rot = rotation.map(|r| {
        let mut order: Vec<Vec<Dart>> = vec![Vec::new(); out.vertex_count()];
        for v in 0..g.vertex_count() {
            if let Some(nv) = vertex_map[v] {
                order[nv] = r.order[v].clone();
            }
        }
        order
    });
    for (&v, cyc) in &cycles {
        let k = cyc.len();
        let ring: Vec<EdgeId> = (0..k).map(|j| out.add_edge(cyc[j], cyc[(j + 1) % k])).collect();
        if let Some(order) = new_rot.as_mut() {
            let attached = &rotation.unwrap().order[v];
            for j in 0..k {
                order[cyc[j]] = vec![attached[j], 2 * ring[j], 2 * ring[(j + k - 1) % k] + 1];
            }
        }
    }
    Ok(BlowUp { graph: out, rotation: new_rot.map(|order| RotationSystem { order }), vertex_map, cycles })
}

/// Connected vertex set meeting each orbit once, with a spanning tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FundamentalDomain {
    pub vertices: Vec<Vertex>,
    pub tree_edges: Vec<EdgeId>,
}

/// `G/D` together with the bookkeeping of the contraction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Contraction {
    pub cayley: CayleyGraph,
    pub domain: FundamentalDomain,
    /// Group element labelling the translate containing each input vertex.
    pub vertex_class: Vec<usize>,
    /// Output edge of each input edge, `None` for contracted tree edges.
    pub edge_image: Vec<Option<EdgeId>>,
}

/// Grows `D` breadth-first from vertex 0, taking darts in index order and
/// adding any neighbour whose orbit is not yet represented.
pub fn fundamental_domain(a: &GraphAction) -> Result<FundamentalDomain, ActionError> {
    let g = &a.graph;
    if !g.is_connected() {
        return Err(ActionError::Disconnected);
    }
    let orbit = a.vertex_orbits();
    let mut represented = vec![false; orbit.iter().max().map_or(0, |m| m + 1)];
    let mut vertices = vec![0];
    let mut tree_edges = Vec::new();
    if g.vertex_count() == 0 {
        return Ok(FundamentalDomain { vertices: Vec::new(), tree_edges });
    }
    represented[orbit[0]] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for &d in g.darts_at(u) {
            let w = g.head(d);
            if !represented[orbit[w]] {
                represented[orbit[w]] = true;
                vertices.push(w);
                tree_edges.push(edge_of(d));
                queue.push_back(w);
            }
        }
    }
    Ok(FundamentalDomain { vertices, tree_edges })
}

/// Contracts every translate of the deterministic fundamental domain of a
/// free action. Parallel edges and loops survive; each edge orbit becomes a
/// generator labelled `g_tail^-1 g_head` (with `#k` appended for repeats).
pub fn babai_contract(a: &GraphAction) -> Result<Contraction, ActionError> {
    if let Err(fp) = is_free(a) {
        return Err(ActionError::NotFree { element: a.group.name(fp.element).to_string(), vertex: fp.vertex });
    }
    let domain = fundamental_domain(a)?;
    let (grp, g) = (&a.group, &a.graph);
    let n = grp.order();
    let mut vertex_class = vec![usize::MAX; g.vertex_count()];
    for &d in &domain.vertices {
        for x in 0..n {
            vertex_class[a.vertex_perm[x][d]] = x;
        }
    }
    let mut contracted = vec![false; g.edge_count()];
    for &t in &domain.tree_edges {
        for x in 0..n {
            contracted[edge_of(a.dart_perm[x][2 * t])] = true;
        }
    }
    // Edge orbits: representative dart of each edge's orbit and the element
    // carrying it there.
    let mut orbit_of: Vec<Option<(usize, usize)>> = vec![None; g.edge_count()];
    let mut orbits: Vec<(Dart, bool)> = Vec::new();
    for e in 0..g.edge_count() {
        if contracted[e] || orbit_of[e].is_some() {
            continue;
        }
        let id = orbits.len();
        let mut inverted = false;
        for x in 0..n {
            let img = a.dart_perm[x][2 * e];
            let f = edge_of(img);
            if f == e && img != 2 * e {
                inverted = true;
            }
            orbit_of[f].get_or_insert((id, x));
        }
        orbits.push((2 * e, inverted));
    }
    let mut labels: Vec<GeneratorInfo> = Vec::new();
    let mut seen_names: HashMap<String, usize> = HashMap::new();
    for &(d, inverted) in &orbits {
        let s = grp.mul(grp.inv(vertex_class[g.tail(d)]), vertex_class[g.head(d)]);
        let base = grp.name(s).to_string();
        let k = seen_names.entry(base.clone()).or_insert(0);
        *k += 1;
        let label = if *k == 1 { base } else { format!("{base}#{k}") };
        labels.push(GeneratorInfo { label, involution: inverted, element: Some(s) });
    }
    let mut out = Graph::new(n);
    let mut edge_generator = Vec::new();
    let mut edge_image = vec![None; g.edge_count()];
    for e in 0..g.edge_count() {
        let Some((id, x)) = orbit_of[e] else { continue };
        let d = a.dart_perm[x][orbits[id].0];
        let (u, v) = (vertex_class[g.tail(d)], vertex_class[g.head(d)]);
        let (u, v) = if orbits[id].1 { (u.min(v), u.max(v)) } else { (u, v) };
        edge_image[e] = Some(out.add_edge(u, v));
        edge_generator.push(id);
    }
    let distance = out.bfs_distances(0).into_iter().map(|d| d.unwrap_or(usize::MAX)).collect();
    let cayley = CayleyGraph {
        graph: out,
        names: grp.element_names().to_vec(),
        generators: labels,
        edge_generator,
        distance,
        frontier: vec![false; n],
        radius: None,
        group: Some(grp.clone()),
        family: None,
    };
    Ok(Contraction { cayley, domain, vertex_class, edge_image })
}

/// Independent check that a contraction output is a Cayley multigraph of its
/// group: `|V| = |Γ|`, every edge joins `x` to `x·s` for its label `s`, each
/// label occurs once per vertex (once per pair for inverted orbits), and left
/// multiplication by every element preserves the labelled edge multiset. The
/// last point makes the induced action regular and the graph
/// vertex-transitive.
pub fn verify_cayley_multigraph(cg: &CayleyGraph) -> Result<(), String> {
    let grp = cg.group.as_ref().ok_or("no group attached")?;
    let n = grp.order();
    if cg.vertex_count() != n {
        return Err(format!("{} vertices for a group of order {n}", cg.vertex_count()));
    }
    let mut multiset: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut per_label = vec![0usize; cg.generators.len()];
    for (e, &(u, v)) in cg.graph.edges().iter().enumerate() {
        let li = cg.edge_generator[e];
        let s = cg.generators[li].element.ok_or("generator without element")?;
        let ok = grp.mul(u, s) == v || (cg.generators[li].involution && grp.mul(v, s) == u);
        if !ok {
            return Err(format!("edge {e} ({u},{v}) does not match label {}", cg.generators[li].label));
        }
        let key = if cg.generators[li].involution { (u.min(v), u.max(v), li) } else { (u, v, li) };
        *multiset.entry(key).or_default() += 1;
        per_label[li] += 1;
    }
    for (li, gen) in cg.generators.iter().enumerate() {
        let expect = if gen.involution { n / 2 } else { n };
        if per_label[li] != expect {
            return Err(format!("label {} has {} edges, expected {expect}", gen.label, per_label[li]));
        }
    }
    for x in 0..n {
        for (&(u, v, li), &m) in &multiset {
            let (xu, xv) = (grp.mul(x, u), grp.mul(x, v));
            let key = if cg.generators[li].involution { (xu.min(xv), xu.max(xv), li) } else { (xu, xv, li) };
            if multiset.get(&key) != Some(&m) {
                return Err(format!("left multiplication by {} moves an edge off the graph", grp.name(x)));
            }
        }
    }
    Ok(())
}

/// Quotient description of a free action: `orbits` vertex orbits and edge
/// orbits `(i, j, s)` lifting to edges `(g, i) -> (g·s, j)` for every `g`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VoltageGraph {
    pub group: GroupModel,
    pub orbits: usize,
    pub edges: Vec<(usize, usize, usize)>,
}

impl VoltageGraph {
    /// One vertex orbit and one loop per generator: the lift is the Cayley
    /// graph with every generator drawn as directed edges.
    pub fn bouquet(group: &GroupModel, gens: &[usize]) -> Self {
        Self { group: group.clone(), orbits: 1, edges: gens.iter().map(|&s| (0, 0, s)).collect() }
    }

    pub fn lifted_vertex_count(&self) -> usize {
        self.orbits * self.group.order()
    }

    /// Inserts a new vertex orbit into edge orbit `o`.
    pub fn subdivide(&mut self, o: usize) {
        let (i, j, s) = self.edges[o];
        let m = self.orbits;
        self.orbits += 1;
        self.edges[o] = (i, m, self.group.identity());
        self.edges.push((m, j, s));
    }

    /// Replaces vertex orbit `i` by a cycle of orbits, one per incident edge
    /// end, attached in the order `slots` (a permutation of the incident
    /// ends, each `(edge orbit, is_tail)`).
    pub fn blow_up(&mut self, i: usize, slots: &[(usize, bool)]) -> Result<(), ActionError> {
        let incident = self.incident(i);
        let mut sorted = slots.to_vec();
        sorted.sort();
        if sorted != incident {
            return Err(ActionError::InvalidVoltage("blow-up slots do not match the incident ends".into()));
        }
        if slots.is_empty() {
            return Err(ActionError::IsolatedVertex(i));
        }
        let k = slots.len();
        let ring: Vec<usize> = (0..k).map(|j| if j == 0 { i } else { self.orbits + j - 1 }).collect();
        self.orbits += k - 1;
        for (j, &(o, tail)) in slots.iter().enumerate() {
            if tail {
                self.edges[o].0 = ring[j];
            } else {
                self.edges[o].1 = ring[j];
            }
        }
        let e = self.group.identity();
        for j in 0..k {
            self.edges.push((ring[j], ring[(j + 1) % k], e));
        }
        Ok(())
    }

    /// Edge ends at orbit `i`, sorted.
    pub fn incident(&self, i: usize) -> Vec<(usize, bool)> {
        let mut out = Vec::new();
        for (o, &(a, b, _)) in self.edges.iter().enumerate() {
            if a == i {
                out.push((o, true));
            }
            if b == i {
                out.push((o, false));
            }
        }
        out.sort();
        out
    }

    /// The covering graph with the group acting on the left. Vertex `(g, i)`
    /// is `i·|Γ| + g`; edge `(g, o)` is `o·|Γ| + g`.
    pub fn lift(&self) -> Result<GraphAction, ActionError> {
        let grp = &self.group;
        let n = grp.order();
        let mut graph = Graph::new(self.orbits * n);
        for &(i, j, s) in &self.edges {
            if i >= self.orbits || j >= self.orbits || s >= n {
                return Err(ActionError::InvalidVoltage(format!("edge ({i},{j},{s}) out of range")));
            }
            for g in 0..n {
                graph.add_edge(i * n + g, j * n + grp.mul(g, s));
            }
        }
        let vertex_perm = (0..n)
            .map(|h| (0..self.orbits * n).map(|v| (v / n) * n + grp.mul(h, v % n)).collect())
            .collect();
        let dart_perm = (0..n)
            .map(|h| {
                (0..graph.dart_count())
                    .map(|d| {
                        let e = edge_of(d);
                        2 * ((e / n) * n + grp.mul(h, e % n)) + d % 2
                    })
                    .collect()
            })
            .collect();
        GraphAction::new(grp.clone(), graph, vertex_perm, dart_perm)
    }
}

/// A random connected free action: starts from the bouquet of `gens` and
/// applies random subdivisions and blow-ups while the lift stays within
/// `max_vertices`.
pub fn random_free_action(
    group: &GroupModel,
    gens: &[usize],
    max_vertices: usize,
    rng: &mut impl Rng,
) -> Result<VoltageGraph, ActionError> {
    let mut vg = VoltageGraph::bouquet(group, gens);
    let n = group.order();
    let steps = rng.gen_range(0..=4);
    for _ in 0..steps {
        if rng.gen_bool(0.5) {
            if vg.lifted_vertex_count() + n > max_vertices || vg.edges.is_empty() {
                continue;
            }
            let o = rng.gen_range(0..vg.edges.len());
            vg.subdivide(o);
        } else {
            let i = rng.gen_range(0..vg.orbits);
            let mut slots = vg.incident(i);
            if slots.is_empty() || vg.lifted_vertex_count() + (slots.len() - 1) * n > max_vertices {
                continue;
            }
            slots.shuffle(rng);
            vg.blow_up(i, &slots)?;
        }
    }
    Ok(vg)
}

/// [`random_free_action`] driven by a ChaCha stream seeded with `seed`.
pub fn seeded_free_action(
    group: &GroupModel,
    gens: &[usize],
    max_vertices: usize,
    seed: u64,
) -> Result<VoltageGraph, ActionError> {
    use rand::SeedableRng;
    random_free_action(group, gens, max_vertices, &mut rand_chacha::ChaCha8Rng::seed_from_u64(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{build_cayley, cyclic};
    use crate::graph::named;

    fn c6_action(step: usize, order: usize) -> GraphAction {
        let grp = cyclic(order);
        let g = named::cycle(6);
        let vertex_perm: Vec<Vec<usize>> = (0..order).map(|x| (0..6).map(|v| (v + x * step) % 6).collect()).collect();
        let dart_perm = vertex_perm
            .iter()
            .map(|p| {
                (0..12)
                    .map(|d| {
                        let (u, v) = (p[g.tail(d)], p[g.head(d)]);
                        g.dart_between(u, v).unwrap()
                    })
                    .collect()
            })
            .collect();
        GraphAction::new(grp, g, vertex_perm, dart_perm).unwrap()
    }

    #[test]
    fn c6_rotations_contract_to_cayley_graphs() {
        let a = c6_action(2, 3);
        a.check_axioms().unwrap();
        let c = babai_contract(&a).unwrap();
        assert_eq!(c.domain.vertices, vec![0, 1]);
        assert_eq!((c.cayley.vertex_count(), c.cayley.edge_count()), (3, 3));
        verify_cayley_multigraph(&c.cayley).unwrap();

        let a = c6_action(3, 2);
        let c = babai_contract(&a).unwrap();
        assert_eq!(c.domain.vertices.len(), 3);
        assert_eq!((c.cayley.vertex_count(), c.cayley.edge_count()), (2, 2));
        assert!(c.cayley.graph.edges().iter().all(|&(u, v)| u != v));
        verify_cayley_multigraph(&c.cayley).unwrap();
    }

    #[test]
    fn singleton_domain_is_identity() {
        let z5 = cyclic(5);
        let cg = build_cayley(&z5, &[("a".into(), 1)]).unwrap();
        let a = left_action(&cg).unwrap();
        a.check_axioms().unwrap();
        assert!(is_free(&a).is_ok());
        let c = babai_contract(&a).unwrap();
        assert_eq!(c.domain.vertices, vec![0]);
        assert_eq!(c.cayley.graph.edges(), cg.graph.edges());
        assert_eq!(c.cayley.generators[0].label, "a");
    }

    #[test]
    fn reflection_of_star_is_not_free() {
        let g = named::star(2);
        let z2 = cyclic(2);
        let vertex_perm = vec![vec![0, 1, 2], vec![0, 2, 1]];
        let dart_perm = vec![(0..4).collect(), vec![2, 3, 0, 1]];
        let a = GraphAction::new(z2, g, vertex_perm, dart_perm).unwrap();
        assert_eq!(is_free(&a), Err(FixedPoint { element: 1, vertex: 0 }));
        assert!(matches!(babai_contract(&a), Err(ActionError::NotFree { .. })));
    }

    #[test]
    fn blow_up_counts_and_planarity() {
        use crate::embedding::{planar_embedding, trace_faces};
        let k4 = named::complete(4);
        let b = blow_up(&k4, &[0], None).unwrap();
        assert_eq!((b.graph.vertex_count(), b.graph.edge_count()), (6, 9));
        assert!(b.cycles[&0].iter().all(|&c| b.graph.degree(c) == 3));
        let c4 = named::cycle(4);
        assert_eq!(blow_up(&c4, &[], None).unwrap().graph.edges(), c4.edges());
        let star = blow_up(&named::star(3), &[0], None).unwrap();
        assert_eq!((star.graph.vertex_count(), star.graph.edge_count()), (6, 6));
        assert!(matches!(blow_up(&Graph::new(2), &[1], None), Err(ActionError::IsolatedVertex(1))));

        let rot = planar_embedding(&named::cube()).unwrap();
        let b = blow_up(&named::cube(), &[0, 3, 5], Some(&rot)).unwrap();
        let emb = trace_faces(&b.graph, b.rotation.as_ref().unwrap()).unwrap();
        assert_eq!(emb.genus, 0);
    }

    #[test]
    fn voltage_lifts_are_free_actions() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let grp = cyclic(6);
        for _ in 0..20 {
            let vg = random_free_action(&grp, &[1, 3], 60, &mut rng).unwrap();
            let a = vg.lift().unwrap();
            a.check_axioms().unwrap();
            assert!(is_free(&a).is_ok());
            let c = babai_contract(&a).unwrap();
            verify_cayley_multigraph(&c.cayley).unwrap();
            let tree = c.domain.tree_edges.len();
            assert_eq!(c.cayley.edge_count(), a.graph.edge_count() - 6 * tree);
        }
    }
}
