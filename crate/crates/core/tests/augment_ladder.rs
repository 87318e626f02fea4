use pcl_core::augment::{ladder_augment, local_vertex_connectivity, vertex_connectivity, AugmentError};
use pcl_core::cyclecut::random_two_connected_plane_graph;
use pcl_core::embedding::{is_planar, planar_embedding, trace_faces, RotationSystem};
use pcl_core::graph::named;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn connectivity_of_named_graphs() {
    assert_eq!(vertex_connectivity(&named::path(4)), 1);
    assert_eq!(vertex_connectivity(&named::cycle(6)), 2);
    assert_eq!(vertex_connectivity(&named::cube()), 3);
    assert_eq!(vertex_connectivity(&named::petersen()), 3);
    assert_eq!(vertex_connectivity(&named::complete(5)), 4);
    let k = named::complete_bipartite(3, 4);
    assert_eq!(vertex_connectivity(&k), 3);
    let adj = k.simple_adjacency();
    assert_eq!(local_vertex_connectivity(&adj, 0, 1, usize::MAX), 4);
}

#[test]
fn ladder_on_a_cycle() {
    let g = named::cycle(5);
    let emb = trace_faces(&g, &planar_embedding(&g).unwrap()).unwrap();
    let (h, hemb, rep) = ladder_augment(&g, &emb, None).unwrap();
    assert_eq!(rep.augmented_faces.len(), 2);
    assert_eq!(h.vertex_count(), 15);
    assert_eq!(h.edge_count(), 25);
    assert_eq!(hemb.genus, 0);
    assert_eq!(vertex_connectivity(&h), 3);
    // Old edges keep their endpoints.
    assert_eq!(&h.edges()[..5], g.edges());
}

#[test]
fn non_planar_embedding_is_rejected() {
    let g = named::complete(5);
    let emb = trace_faces(&g, &RotationSystem::identity(&g)).unwrap();
    assert!(emb.genus > 0);
    assert!(matches!(ladder_augment(&g, &emb, None), Err(AugmentError::NotPlanar(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ladder_output_is_planar_and_three_connected(seed in any::<u64>(), n in 3usize..=30) {
        let g = random_two_connected_plane_graph(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let emb = trace_faces(&g, &planar_embedding(&g).unwrap()).unwrap();
        let (h, hemb, rep) = ladder_augment(&g, &emb, None).unwrap();
        prop_assert_eq!(h.vertex_count(), g.vertex_count() + rep.boundary_total);
        prop_assert_eq!(h.edge_count(), g.edge_count() + 2 * rep.boundary_total);
        prop_assert_eq!(hemb.genus, 0);
        prop_assert!(is_planar(&h));
        prop_assert!(vertex_connectivity(&h) >= 3);
    }
}
