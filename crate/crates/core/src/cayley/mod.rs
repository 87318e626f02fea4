//! Cayley multigraphs of finite groups, and radius-R balls in Cayley graphs
//! of the bundled infinite families.

mod family;

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{edge_of, Dart, EdgeId, Graph, Vertex};
use crate::group::GroupModel;

pub use family::FamilyGenerator;
use family::{Amalgam, DirectProduct, Factor, Finite, FreeGroup, NormalForm};

/// Balls larger than this are refused.
pub const DEFAULT_BALL_LIMIT: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CayleyError {
    #[error("generators reach a subgroup of order {reached}, not the whole group of order {order}")]
    NonGenerating { reached: usize, order: usize },
    #[error("no generators given")]
    NoGenerators,
    #[error("amalgamation element `{element}` of factor {factor} is not an involution")]
    NotInvolution { factor: String, element: String },
    #[error("amalgamation element `{element}` is not in the span of the generators of factor {factor}")]
    NotInSpan { factor: String, element: String },
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("unsupported family `{0}`")]
    UnsupportedFamily(String),
    #[error("ball of radius {radius} exceeds {limit} vertices")]
    BallTooLarge { radius: usize, limit: usize },
}

/// One generator of a Cayley graph. `element` is set for complete graphs of
/// finite groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorInfo {
    pub label: String,
    pub involution: bool,
    pub element: Option<usize>,
}

/// Side of a rotation slot: a directed edge contributes an outgoing and an
/// incoming slot, an undirected one a single slot (two for a loop).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    Out,
    In,
    Both,
}

/// A labelled Cayley multigraph, possibly truncated to a ball.
///
/// For complete graphs vertex `i` is group element `i`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CayleyGraph {
    pub graph: Graph,
    pub names: Vec<String>,
    pub generators: Vec<GeneratorInfo>,
    /// Generator index of each edge.
    pub edge_generator: Vec<usize>,
    /// Distance from the identity (vertex 0).
    pub distance: Vec<usize>,
    /// Vertices at distance exactly `radius` in a truncated ball.
    pub frontier: Vec<bool>,
    /// `None` for a complete graph.
    pub radius: Option<usize>,
    pub group: Option<GroupModel>,
    /// Family tag for balls built from a bundled normal form.
    pub family: Option<String>,
}

impl CayleyGraph {
    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn is_complete(&self) -> bool {
        self.radius.is_none()
    }

    pub fn label(&self, e: EdgeId) -> &str {
        &self.generators[self.edge_generator[e]].label
    }

    pub fn is_directed(&self, e: EdgeId) -> bool {
        !self.generators[self.edge_generator[e]].involution
    }

    /// Rotation slot of a dart: its generator and side.
    pub fn slot(&self, d: Dart) -> (usize, Side) {
        let e = edge_of(d);
        let gen = self.edge_generator[e];
        if self.is_directed(e) || self.graph.is_loop(e) {
            (gen, if d % 2 == 0 { Side::Out } else { Side::In })
        } else {
            (gen, Side::Both)
        }
    }

    /// Slots present at every full-degree vertex, in canonical order.
    pub fn slot_types(&self) -> Vec<(usize, Side)> {
        let mut out = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            let is_loop = g.element == Some(0);
            if g.involution && !is_loop {
                out.push((i, Side::Both));
            } else {
                out.push((i, Side::Out));
                out.push((i, Side::In));
            }
        }
        out
    }

    pub fn interior_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.vertex_count()).filter(move |&v| !self.frontier[v])
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<Vertex> {
        self.names.iter().position(|n| n == name)
    }

    /// Element of the generating multiset with the given label.
    pub fn generator_by_label(&self, label: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.label == label)
    }

    /// Every vertex reachable within `r` (a sub-ball of a larger ball).
    pub fn restrict(&self, r: usize) -> CayleyGraph {
        let keep: Vec<Vertex> = (0..self.vertex_count()).filter(|&v| self.distance[v] <= r).collect();
        let (graph, origin) = self.graph.induced_subgraph(&keep);
        CayleyGraph {
            graph,
            names: keep.iter().map(|&v| self.names[v].clone()).collect(),
            generators: self.generators.clone(),
            edge_generator: origin.iter().map(|&e| self.edge_generator[e]).collect(),
            distance: keep.iter().map(|&v| self.distance[v]).collect(),
            frontier: keep.iter().map(|&v| self.distance[v] == r).collect(),
            radius: Some(r),
            group: None,
            family: self.family.clone(),
        }
    }
}

/// Complete Cayley multigraph `Cay(g, gens)`. Generators of order two (and
/// the identity) give one undirected edge per vertex pair (a loop for the
/// identity); the others give one directed edge `x -> x*s` per vertex.
pub fn build_cayley(g: &GroupModel, gens: &[(String, usize)]) -> Result<CayleyGraph, CayleyError> {
    if gens.is_empty() {
        return if g.order() == 1 {
            Ok(finish_complete(g, Vec::new(), Graph::new(1), Vec::new()))
        } else {
            Err(CayleyError::NoGenerators)
        };
    }
    let elems: Vec<usize> = gens.iter().map(|&(_, x)| x).collect();
    let reached = g.closure(&elems).len();
    if reached != g.order() {
        return Err(CayleyError::NonGenerating { reached, order: g.order() });
    }
    let generators: Vec<GeneratorInfo> = gens
        .iter()
        .map(|(l, x)| GeneratorInfo { label: l.clone(), involution: g.element_order(*x) <= 2, element: Some(*x) })
        .collect();
    let mut graph = Graph::new(g.order());
    let mut edge_generator = Vec::new();
    for x in 0..g.order() {
        for (i, gi) in generators.iter().enumerate() {
            let y = g.mul(x, gi.element.unwrap());
            if gi.involution && y < x {
                continue;
            }
            graph.add_edge(x, y);
            edge_generator.push(i);
        }
    }
    Ok(finish_complete(g, generators, graph, edge_generator))
}

fn finish_complete(
    g: &GroupModel,
    generators: Vec<GeneratorInfo>,
    graph: Graph,
    edge_generator: Vec<usize>,
) -> CayleyGraph {
    let distance = graph.bfs_distances(0).into_iter().map(|d| d.unwrap_or(usize::MAX)).collect();
    CayleyGraph {
        graph,
        names: g.element_names().to_vec(),
        generators,
        edge_generator,
        distance,
        frontier: vec![false; g.order()],
        radius: None,
        group: Some(g.clone()),
        family: None,
    }
}

/// A bundled group given by a normal-form engine.
#[derive(Clone)]
pub struct Family {
    tag: String,
    engine: Arc<dyn NormalForm>,
    finite: bool,
}

impl std::fmt::Debug for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Family").field("tag", &self.tag).finish()
    }
}

impl Family {
    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn is_finite(&self) -> bool {
        self.finite
    }

    pub fn generators(&self) -> Vec<FamilyGenerator> {
        self.engine.generators()
    }

    /// Z with generator `t`.
    pub fn integers() -> Self {
        Self::integers_with(&[1]).expect("non-empty")
    }

    /// Z with the given integer generators, labelled by their values.
    pub fn integers_with(steps: &[i64]) -> Result<Self, CayleyError> {
        if steps.is_empty() || steps.iter().all(|&s| s == 0) {
            return Err(CayleyError::NoGenerators);
        }
        let g = steps.iter().fold(0i64, |a, &b| gcd(a, b.abs()));
        if g != 1 {
            return Err(CayleyError::NonGenerating { reached: 0, order: 0 });
        }
        let gens = if steps == [1] {
            vec![("t".to_string(), 0, vec![1])]
        } else {
            steps.iter().map(|s| (s.to_string(), 0, vec![*s])).collect()
        };
        let tag = if steps == [1] {
            "z".to_string()
        } else {
            format!("z-gens-{}", steps.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("-"))
        };
        Ok(Self {
            tag,
            engine: Arc::new(DirectProduct { finite: None, rank: 1, gens }),
            finite: false,
        })
    }

    /// Z^rank with the standard basis `x, y, z, ...`.
    pub fn free_abelian(rank: usize) -> Self {
        let gens = (0..rank)
            .map(|i| {
                let mut v = vec![0; rank];
                v[i] = 1;
                (basis_label(i, rank), 0, v)
            })
            .collect();
        Self {
            tag: if rank == 2 { "z-cross-z".into() } else { format!("z{rank}") },
            engine: Arc::new(DirectProduct { finite: None, rank, gens }),
            finite: false,
        }
    }

    /// C_n × Z with generators `a` (order n) and `t`.
    pub fn cyclic_times_integers(n: usize) -> Result<Self, CayleyError> {
        if n == 0 {
            return Err(CayleyError::InvalidFamily("cyclic factor must have positive order".into()));
        }
        let cn = cyclic(n);
        let gens = if n == 1 {
            vec![("t".to_string(), 0, vec![1])]
        } else {
            vec![("t".to_string(), 0, vec![1]), ("a".to_string(), 1, vec![0])]
        };
        Ok(Self {
            tag: format!("z-cross-z{n}"),
            engine: Arc::new(DirectProduct { finite: Some(cn), rank: 1, gens }),
            finite: false,
        })
    }

    /// Free group on `a, b, c, ...`.
    pub fn free_group(rank: usize) -> Result<Self, CayleyError> {
        if rank == 0 || rank > 26 {
            return Err(CayleyError::InvalidFamily(format!("free group rank {rank} unsupported")));
        }
        let symbols = (0..rank).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
        Ok(Self { tag: format!("f{rank}"), engine: Arc::new(FreeGroup { symbols }), finite: false })
    }

    /// Free product of finite groups, each with its own generators.
    pub fn free_product(factors: Vec<(GroupModel, Vec<(String, usize)>)>) -> Result<Self, CayleyError> {
        if factors.len() < 2 {
            return Err(CayleyError::InvalidFamily("a free product needs two factors".into()));
        }
        let finite = factors.iter().filter(|(g, _)| g.order() > 1).count() < 2;
        let factors = factors
            .into_iter()
            .enumerate()
            .map(|(i, (group, gens))| Factor { group, gens, shared: None, tag: factor_tag(i) })
            .collect();
        let engine = Amalgam::new(factors, None)?;
        Ok(Self { tag: "free-product".into(), engine: Arc::new(engine), finite })
    }

    /// `A *_{b_a = b_b} B` with the identified involution labelled `b`.
    pub fn amalgam(
        a: &GroupModel,
        b_a: usize,
        gens_a: &[(String, usize)],
        b: &GroupModel,
        b_b: usize,
        gens_b: &[(String, usize)],
    ) -> Result<Self, CayleyError> {
        for (tag, g, x, gens) in [("A", a, b_a, gens_a), ("B", b, b_b, gens_b)] {
            if x >= g.order() || g.element_order(x) != 2 {
                return Err(CayleyError::NotInvolution {
                    factor: tag.into(),
                    element: if x < g.order() { g.name(x).to_string() } else { x.to_string() },
                });
            }
            let elems: Vec<usize> = gens.iter().map(|&(_, y)| y).collect();
            if !g.closure(&elems).contains(&x) {
                return Err(CayleyError::NotInSpan { factor: tag.into(), element: g.name(x).to_string() });
            }
        }
        let factors = vec![
            Factor { group: a.clone(), gens: gens_a.to_vec(), shared: Some(b_a), tag: "A".into() },
            Factor { group: b.clone(), gens: gens_b.to_vec(), shared: Some(b_b), tag: "B".into() },
        ];
        let finite = a.order() <= 2 || b.order() <= 2;
        let engine = Amalgam::new(factors, Some("b".into()))?;
        Ok(Self { tag: "amalgam".into(), engine: Arc::new(engine), finite })
    }

    /// A finite group, so that balls and the ends classifier treat it like
    /// any other family.
    pub fn finite_group(g: &GroupModel, gens: &[(String, usize)]) -> Result<Self, CayleyError> {
        let elems: Vec<usize> = gens.iter().map(|&(_, x)| x).collect();
        let reached = g.closure(&elems).len();
        if reached != g.order() {
            return Err(CayleyError::NonGenerating { reached, order: g.order() });
        }
        Ok(Self {
            tag: g.name.clone().unwrap_or_else(|| "finite".into()),
            engine: Arc::new(Finite { group: g.clone(), gens: gens.to_vec() }),
            finite: true,
        })
    }

    pub fn with_tag(mut self, tag: impl Into<String>) -> Self {
        self.tag = tag.into();
        self
    }
}

fn basis_label(i: usize, rank: usize) -> String {
    if rank <= 3 {
        ["x", "y", "z"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

fn factor_tag(i: usize) -> String {
    if i < 26 {
        ((b'A' + i as u8) as char).to_string()
    } else {
        format!("F{i}")
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Cyclic group of order `n` with generator `a`; elements named `e, a, a^2, ...`.
pub fn cyclic(n: usize) -> GroupModel {
    let names = (0..n)
        .map(|i| match i {
            0 => "e".to_string(),
            1 => "a".to_string(),
            _ => format!("a^{i}"),
        })
        .collect();
    let mul = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
    let gens = if n > 1 { vec![("a".to_string(), 1)] } else { vec![("a".to_string(), 0)] };
    GroupModel::from_table(Some(format!("Z{n}")), names, mul, gens).expect("cyclic table is a group")
}

/// Exact ball of radius `radius` around the identity. Vertices are numbered
/// in breadth-first order with generators scanned as `s1, s1^-1, s2, ...`,
/// and named by their normal forms.
pub fn build_ball(family: &Family, radius: usize) -> Result<CayleyGraph, CayleyError> {
    build_ball_limited(family, radius, DEFAULT_BALL_LIMIT)
}

pub fn build_ball_limited(family: &Family, radius: usize, limit: usize) -> Result<CayleyGraph, CayleyError> {
    let engine = family.engine.as_ref();
    let fgens = engine.generators();
    if fgens.is_empty() {
        return Err(CayleyError::NoGenerators);
    }
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut elems = vec![engine.identity()];
    let mut distance = vec![0usize];
    index.insert(elems[0].clone(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        if distance[v] == radius {
            continue;
        }
        for (gi, g) in fgens.iter().enumerate() {
            let sides: &[bool] = if g.involution { &[false] } else { &[false, true] };
            for &inv in sides {
                let y = engine.mul_gen(&elems[v], gi, inv);
                if !index.contains_key(&y) {
                    if elems.len() >= limit {
                        return Err(CayleyError::BallTooLarge { radius, limit });
                    }
                    index.insert(y.clone(), elems.len());
                    elems.push(y);
                    distance.push(distance[v] + 1);
                    queue.push_back(elems.len() - 1);
                }
            }
        }
    }
    let mut graph = Graph::new(elems.len());
    let mut edge_generator = Vec::new();
    for x in 0..elems.len() {
        for (gi, g) in fgens.iter().enumerate() {
            let y = engine.mul_gen(&elems[x], gi, false);
            if let Some(&yi) = index.get(&y) {
                if g.involution && yi < x {
                    continue;
                }
                graph.add_edge(x, yi);
                edge_generator.push(gi);
            }
        }
    }
    let names = elems.iter().map(|x| engine.name(x)).collect();
    let frontier = distance.iter().map(|&d| d == radius).collect();
    Ok(CayleyGraph {
        graph,
        names,
        generators: fgens
            .into_iter()
            .map(|g| GeneratorInfo { label: g.label, involution: g.involution, element: None })
            .collect(),
        edge_generator,
        distance,
        frontier,
        radius: Some(radius),
        group: None,
        family: Some(family.tag.clone()),
    })
}

/// Ball of radius `radius` in `Cay(A *_{b_a = b_b} B, gens_a ∪ gens_b)`.
pub fn build_amalgam_ball(
    a: &GroupModel,
    b_a: usize,
    b: &GroupModel,
    b_b: usize,
    gens_a: &[(String, usize)],
    gens_b: &[(String, usize)],
    radius: usize,
) -> Result<CayleyGraph, CayleyError> {
    build_ball(&Family::amalgam(a, b_a, gens_a, b, b_b, gens_b)?, radius)
}
