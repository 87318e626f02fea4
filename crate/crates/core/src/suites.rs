//! Seeded randomized property suites. Each returns the number of trials and
//! a description of every failure.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::actions::{babai_contract, is_free, random_free_action, verify_cayley_multigraph};
use crate::augment::{ladder_augment, vertex_connectivity};
use crate::corpus::{self, CAYLEY_GRAPHS};
use crate::cyclecut::{
    crossing_parity, crossing_parity_flood, face_boundary, is_single_cycle, random_two_connected_plane_graph,
    sep_sum_check, separating_cycle_between_faces,
};
use crate::embedding::{
    planar_embedding, planarity_test, search_consistent_embeddings, trace_faces, Embedding, PlanarityResult,
    RotationSystem,
};
use crate::graph::Graph;

/// Seed from `PCL_SEED`, default 0.
pub fn seed_from_env() -> u64 {
    std::env::var("PCL_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub trials: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, trial: usize, msg: impl Into<String>) {
        self.failures.push(format!("trial {trial}: {}", msg.into()));
    }
}

/// Groups of order at most 12 with generating sets, for random free actions.
pub const ACTION_GROUPS: &[(&str, &[&str])] = &[
    ("a4", &["k", "r"]),
    ("d4", &["r", "s"]),
    ("d5", &["r", "s"]),
    ("d6", &["r", "s"]),
    ("q8", &["i", "j"]),
    ("s3", &["s", "t"]),
    ("z2", &["b"]),
    ("z2xz2", &["a", "b"]),
    ("z3", &["a"]),
    ("z4", &["a"]),
    ("z4xz2", &["(1,0)", "(0,1)"]),
    ("z5", &["a"]),
    ("z6", &["a"]),
    ("z12", &["a"]),
];

/// Random free actions on connected graphs of at most 60 vertices, each
/// contracted along its fundamental domain.
pub fn babai_suite(seed: u64, trials: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let groups: Vec<_> = ACTION_GROUPS
        .iter()
        .map(|(k, gens)| {
            let g = corpus::group(k).expect("bundled group");
            let elems: Vec<usize> = gens.iter().map(|s| g.resolve(s).expect("bundled generator")).collect();
            (g, elems)
        })
        .collect();
    let mut rep = SuiteReport { trials, ..Default::default() };
    for t in 0..trials {
        let (g, gens) = &groups[rng.gen_range(0..groups.len())];
        let vg = match random_free_action(g, gens, 60, &mut rng) {
            Ok(v) => v,
            Err(e) => {
                rep.fail(t, e.to_string());
                continue;
            }
        };
        let a = match vg.lift() {
            Ok(a) => a,
            Err(e) => {
                rep.fail(t, e.to_string());
                continue;
            }
        };
        if let Err(e) = a.check_axioms() {
            rep.fail(t, e.to_string());
        }
        if is_free(&a).is_err() || !a.graph.is_connected() {
            rep.fail(t, "generated action is not free on a connected graph");
            continue;
        }
        let c = match babai_contract(&a) {
            Ok(c) => c,
            Err(e) => {
                rep.fail(t, e.to_string());
                continue;
            }
        };
        if c.cayley.vertex_count() != g.order() {
            rep.fail(t, "vertex count differs from group order");
        }
        if let Err(e) = verify_cayley_multigraph(&c.cayley) {
            rep.fail(t, e);
        }
        if c.cayley.edge_count() != a.graph.edge_count() - g.order() * c.domain.tree_edges.len() {
            rep.fail(t, "edge count not conserved");
        }
        let planar_in = matches!(planarity_test(&a.graph), Ok(PlanarityResult::Planar(_)));
        let planar_out = matches!(planarity_test(&c.cayley.graph), Ok(PlanarityResult::Planar(_)));
        if planar_in && !planar_out {
            rep.fail(t, "planar input contracted to a non-planar graph");
        }
    }
    rep
}

fn planar(g: &Graph) -> Embedding {
    trace_faces(g, &planar_embedding(g).expect("generated graphs are planar")).expect("valid rotation")
}

/// Random 2-connected plane graphs of at most 30 vertices, ladder-augmented.
pub fn ladder_suite(seed: u64, trials: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let mut rep = SuiteReport { trials, ..Default::default() };
    for t in 0..trials {
        let g = random_two_connected_plane_graph(rng.gen_range(3..=30), &mut rng);
        let emb = planar(&g);
        let (h, hemb, r) = match ladder_augment(&g, &emb, None) {
            Ok(x) => x,
            Err(e) => {
                rep.fail(t, e.to_string());
                continue;
            }
        };
        let boundary: usize = emb.faces.iter().map(|f| f.len()).sum();
        if r.boundary_total != boundary || h.vertex_count() != g.vertex_count() + boundary {
            rep.fail(t, "vertex count formula fails");
        }
        if h.edge_count() != g.edge_count() + 2 * boundary {
            rep.fail(t, "edge count formula fails");
        }
        if hemb.genus != 0 || !hemb.check_euler(&h) {
            rep.fail(t, "augmented embedding is not a sphere embedding");
        }
        if !matches!(planarity_test(&h), Ok(PlanarityResult::Planar(_))) {
            rep.fail(t, "planarity test rejects the augmented graph");
        }
        let k = vertex_connectivity(&h);
        if k < 3 {
            rep.fail(t, format!("augmented graph has connectivity {k}"));
        }
    }
    rep
}

/// Counts of the separation suite besides failures.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SeparationReport {
    pub suite: SuiteReport,
    pub parity_violations: usize,
    pub oracle_queries: usize,
    pub sums_that_were_cycles: usize,
}

/// Sums of facial boundaries avoiding two chosen faces, checked for parity,
/// plus oracle agreement and separating-cycle construction.
pub fn separation_suite(seed: u64, trials: usize) -> SeparationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
    let mut rep = SeparationReport { suite: SuiteReport { trials, ..Default::default() }, ..Default::default() };
    for t in 0..trials {
        let g = random_two_connected_plane_graph(rng.gen_range(4..=20), &mut rng);
        let emb = planar(&g);
        let nf = emb.face_count();
        let f1 = rng.gen_range(0..nf);
        let f2 = (f1 + rng.gen_range(1..nf)) % nf;
        // Random connected set of faces avoiding f1 and f2.
        let mut set = Vec::new();
        let mut candidates: Vec<usize> = (0..nf).filter(|&f| f != f1 && f != f2).collect();
        candidates.shuffle(&mut rng);
        if let Some(&start) = candidates.first() {
            set.push(start);
            let want = rng.gen_range(1..=4);
            while set.len() < want {
                let next = candidates.iter().copied().find(|&f| {
                    !set.contains(&f)
                        && emb.faces[f].darts.iter().any(|&d| set.contains(&emb.face_of[d ^ 1]))
                });
                match next {
                    Some(f) => set.push(f),
                    None => break,
                }
            }
        }
        let cycles: Vec<_> = set.iter().map(|&f| face_boundary(&g, &emb, f)).collect();
        match sep_sum_check(&g, &emb, f1, f2, &cycles) {
            Ok(ledger) => {
                if ledger.parities.iter().any(|&p| p != 0) {
                    rep.suite.fail(t, "a face boundary avoiding both faces separates them");
                }
                if ledger.violation || ledger.sum_parity.is_some_and(|p| p != 0) {
                    rep.parity_violations += 1;
                    rep.suite.fail(t, "sum of non-separating cycles separates");
                }
                if ledger.sum_is_cycle {
                    rep.sums_that_were_cycles += 1;
                }
            }
            Err(e) => rep.suite.fail(t, e.to_string()),
        }
        // Oracle agreement on every facial cycle and on the sum when it is one.
        let mut queries: Vec<_> = (0..nf).map(|f| face_boundary(&g, &emb, f)).collect();
        let mut total = crate::cyclecut::EdgeVector::zeros(g.edge_count());
        for c in &cycles {
            total.add(c);
        }
        if is_single_cycle(&g, &total) {
            queries.push(total);
        }
        match separating_cycle_between_faces(&g, &emb, f1, f2) {
            Ok(sep) => {
                if crossing_parity_flood(&g, &emb, &sep.cycle, f1, f2) != Ok(1) {
                    rep.suite.fail(t, "separating cycle has parity 0");
                }
                queries.push(sep.cycle);
            }
            Err(e) => rep.suite.fail(t, e.to_string()),
        }
        for q in &queries {
            rep.oracle_queries += 1;
            let a = crossing_parity(&g, &emb, q, f1, f2);
            let b = crossing_parity_flood(&g, &emb, q, f1, f2);
            if a != b || a.is_err() {
                rep.suite.fail(t, format!("dual path parity {a:?} vs flood fill {b:?}"));
            }
        }
    }
    rep
}

/// Euler bookkeeping over every embedding the library traces on its bundled
/// and random graphs: identity rotations, planar rotations, consistent
/// embeddings and ladder outputs.
pub fn bookkeeping_suite(seed: u64, random_graphs: usize) -> SuiteReport {
    let mut embeddings: Vec<(String, Graph, Embedding)> = Vec::new();
    for b in CAYLEY_GRAPHS {
        let cg = corpus::cayley(b.name).expect("bundled graph");
        let g = cg.graph.clone();
        embeddings.push((format!("{} identity", b.name), g.clone(), trace_faces(&g, &RotationSystem::identity(&g)).unwrap()));
        if let Some(rot) = planar_embedding(&g) {
            embeddings.push((format!("{} planar", b.name), g.clone(), trace_faces(&g, &rot).unwrap()));
        }
        if let Ok(found) = search_consistent_embeddings(&cg) {
            for (i, f) in found.into_iter().take(8).enumerate() {
                embeddings.push((format!("{} consistent {i}", b.name), g.clone(), f.embedding));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(3));
    for i in 0..random_graphs {
        let g = random_two_connected_plane_graph(rng.gen_range(3..=20), &mut rng);
        let emb = planar(&g);
        if let Ok((h, hemb, _)) = ladder_augment(&g, &emb, None) {
            embeddings.push((format!("random {i} ladder"), h, hemb));
        }
        embeddings.push((format!("random {i} identity"), g.clone(), trace_faces(&g, &RotationSystem::identity(&g)).unwrap()));
        embeddings.push((format!("random {i} planar"), g, emb));
    }
    let mut rep = SuiteReport { trials: embeddings.len(), ..Default::default() };
    for (t, (name, g, emb)) in embeddings.iter().enumerate() {
        let total: usize = emb.faces.iter().map(|f| f.len()).sum();
        let chi = g.vertex_count() as i64 - g.edge_count() as i64 + emb.face_count() as i64;
        let connected = g.is_connected();
        if total != 2 * g.edge_count() || (connected && chi != 2 - 2 * emb.genus as i64) || !emb.check_euler(g) {
            rep.fail(t, format!("{name}: faces {total}, chi {chi}, genus {}", emb.genus));
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        assert!(babai_suite(7, 10).passed());
        assert!(ladder_suite(7, 3).passed());
        let s = separation_suite(7, 20);
        assert!(s.suite.passed(), "{:?}", s.suite.failures);
        assert!(bookkeeping_suite(7, 3).passed());
    }
}
