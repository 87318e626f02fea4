use pcl_core::corpus;
use pcl_core::cyclecut::random_two_connected_plane_graph;
use pcl_core::embedding::{
    kuratowski_witness, planar_embedding, planarity_test, trace_faces, verify_witness, KuratowskiKind,
    PlanarityResult, RotationSystem,
};
use pcl_core::graph::named;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn kuratowski_graphs() {
    let k5 = named::complete(5);
    let w = kuratowski_witness(&k5).unwrap();
    assert_eq!(w.kind, KuratowskiKind::K5);
    verify_witness(&k5, &w).unwrap();
    let k33 = named::complete_bipartite(3, 3);
    let w = kuratowski_witness(&k33).unwrap();
    assert_eq!(w.kind, KuratowskiKind::K33);
    verify_witness(&k33, &w).unwrap();
    assert!(matches!(planarity_test(&named::petersen()), Ok(PlanarityResult::NonPlanar(_))));
}

#[test]
fn k44_cayley_graph_contains_k33() {
    let cg = corpus::cayley("k44").unwrap();
    let w = kuratowski_witness(&cg.graph).expect("non-planar");
    assert_eq!(w.kind, KuratowskiKind::K33);
    verify_witness(&cg.graph, &w).unwrap();
}

#[test]
fn truncated_tetrahedron_faces() {
    let cg = corpus::cayley("a4").unwrap();
    let emb = trace_faces(&cg.graph, &planar_embedding(&cg.graph).unwrap()).unwrap();
    assert_eq!(emb.genus, 0);
    assert_eq!(emb.face_vector().into_iter().collect::<Vec<_>>(), vec![(3, 4), (6, 4)]);
}

#[test]
fn identity_rotation_and_its_mirror_share_genus() {
    let g = named::complete(4);
    let emb = trace_faces(&g, &RotationSystem::identity(&g)).unwrap();
    assert!(emb.check_euler(&g));
    let mirrored = trace_faces(&g, &RotationSystem::identity(&g).mirror()).unwrap();
    assert_eq!(emb.genus, mirrored.genus);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_plane_graphs_embed_in_the_sphere(seed in any::<u64>(), n in 3usize..40) {
        let g = random_two_connected_plane_graph(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let rot = planar_embedding(&g).expect("planar by construction");
        let emb = trace_faces(&g, &rot).unwrap();
        prop_assert_eq!(emb.genus, 0);
        prop_assert!(emb.check_euler(&g));
        prop_assert_eq!(emb.face_count() + g.vertex_count(), g.edge_count() + 2);
    }

    #[test]
    fn adding_k5_breaks_planarity(seed in any::<u64>(), n in 3usize..20) {
        let mut g = random_two_connected_plane_graph(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let base = g.vertex_count();
        for _ in 0..5 {
            g.add_vertex();
        }
        for i in 0..5 {
            for j in i + 1..5 {
                g.add_edge(base + i, base + j);
            }
        }
        g.add_edge(0, base);
        match planarity_test(&g).unwrap() {
            PlanarityResult::NonPlanar(w) => prop_assert!(verify_witness(&g, &w).is_ok()),
            PlanarityResult::Planar(_) => prop_assert!(false, "K5 subgraph reported planar"),
        }
    }
}
