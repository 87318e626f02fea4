use pcl_core::corpus;
use pcl_core::cyclecut::{
    crossing_parity, crossing_parity_flood, face_boundary, is_single_cycle, random_two_connected_plane_graph, rank,
    sep_sum_check, separating_cycle_between_faces, star, star_generation_check, EdgeVector,
};
use pcl_core::embedding::{planar_embedding, trace_faces};
use pcl_core::graph::named;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn star_ranks_on_bundled_graphs() {
    for b in corpus::CAYLEY_GRAPHS {
        let cg = corpus::cayley(b.name).unwrap();
        let s = star_generation_check(&cg).unwrap();
        assert!(s.ok, "{}", b.name);
        assert_eq!(s.rank, cg.vertex_count() - 1, "{}", b.name);
    }
}

#[test]
fn stars_sum_to_zero() {
    let g = named::petersen();
    let stars: Vec<_> = (0..g.vertex_count()).map(|v| star(&g, v)).collect();
    let mut total = EdgeVector::zeros(g.edge_count());
    for s in &stars {
        total.add(s);
    }
    assert!(total.is_zero());
    assert_eq!(rank(&stars), 9);
}

#[test]
fn face_boundaries_of_the_cube() {
    let g = named::cube();
    let emb = trace_faces(&g, &planar_embedding(&g).unwrap()).unwrap();
    assert_eq!(emb.face_count(), 6);
    for f in 0..6 {
        let b = face_boundary(&g, &emb, f);
        assert!(is_single_cycle(&g, &b));
        assert_eq!(b.count(), 4);
        // A face boundary separates that face from every other one.
        for h in (0..6).filter(|&h| h != f) {
            assert_eq!(crossing_parity(&g, &emb, &b, f, h), Ok(1));
        }
    }
    let faces: Vec<_> = (0..6).map(|f| face_boundary(&g, &emb, f)).collect();
    assert_eq!(rank(&faces), 5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dual_path_parity_matches_flood_fill(seed in any::<u64>(), n in 4usize..24, pick in any::<(usize, usize, u64)>()) {
        let g = random_two_connected_plane_graph(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let emb = trace_faces(&g, &planar_embedding(&g).unwrap()).unwrap();
        let nf = emb.face_count();
        let f1 = pick.0 % nf;
        let f2 = (f1 + 1 + pick.1 % (nf - 1)) % nf;
        let sep = separating_cycle_between_faces(&g, &emb, f1, f2).unwrap();
        prop_assert!(is_single_cycle(&g, &sep.cycle));
        prop_assert_eq!(crossing_parity(&g, &emb, &sep.cycle, f1, f2), Ok(1));
        prop_assert_eq!(crossing_parity_flood(&g, &emb, &sep.cycle, f1, f2), Ok(1));
        // Sums of boundaries of faces other than f1, f2 never separate them.
        let others: Vec<_> = (0..nf)
            .filter(|&f| f != f1 && f != f2 && (pick.2 >> (f % 64)) & 1 == 1)
            .map(|f| face_boundary(&g, &emb, f))
            .collect();
        let ledger = sep_sum_check(&g, &emb, f1, f2, &others).unwrap();
        prop_assert!(!ledger.violation);
        prop_assert!(ledger.parities.iter().all(|&p| p == 0));
        for f in 0..nf {
            let b = face_boundary(&g, &emb, f);
            prop_assert_eq!(
                crossing_parity(&g, &emb, &b, f1, f2),
                crossing_parity_flood(&g, &emb, &b, f1, f2)
            );
        }
    }
}
