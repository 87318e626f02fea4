use pcl_core::actions::{
    babai_contract, blow_up, fundamental_domain, is_free, left_action, seeded_free_action, verify_cayley_multigraph,
    GraphAction,
};
use pcl_core::corpus;
use pcl_core::embedding::is_planar;
use pcl_core::graph::named;
use proptest::prelude::*;

#[test]
fn left_action_on_bundled_graphs_is_free() {
    for b in corpus::CAYLEY_GRAPHS {
        let cg = corpus::cayley(b.name).unwrap();
        let a = left_action(&cg).unwrap();
        a.check_axioms().unwrap();
        assert!(is_free(&a).is_ok(), "{}", b.name);
        let c = babai_contract(&a).unwrap();
        assert_eq!(c.cayley.vertex_count(), cg.vertex_count());
        assert_eq!(c.cayley.edge_count(), cg.edge_count());
        verify_cayley_multigraph(&c.cayley).unwrap();
    }
}

#[test]
fn blown_up_prism_stays_planar() {
    let cg = corpus::cayley("prism").unwrap();
    let all: Vec<usize> = (0..cg.vertex_count()).collect();
    let b = blow_up(&cg.graph, &all, None).unwrap();
    // Each degree-3 vertex becomes a triangle.
    assert_eq!(b.graph.vertex_count(), 24);
    assert_eq!(b.graph.edge_count(), 12 + 24);
    assert!(is_planar(&b.graph));
}

#[test]
fn reflection_is_not_free() {
    // Z2 swapping the two ends of a path on three vertices fixes the middle.
    let g = named::path(3);
    let group = corpus::group("z2").unwrap();
    let a = GraphAction::new(group, g, vec![vec![0, 1, 2], vec![2, 1, 0]], vec![vec![0, 1, 2, 3], vec![3, 2, 1, 0]])
        .unwrap();
    a.check_axioms().unwrap();
    let fp = is_free(&a).unwrap_err();
    assert_eq!(fp.vertex, 1);
    assert!(babai_contract(&a).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_free_actions_contract_to_cayley_graphs(seed in any::<u64>(), pick in 0usize..14) {
        let (key, gens) = pcl_core::suites::ACTION_GROUPS[pick];
        let g = corpus::group(key).unwrap();
        let elems: Vec<usize> = gens.iter().map(|s| g.resolve(s).unwrap()).collect();
        let a = seeded_free_action(&g, &elems, 60, seed).unwrap().lift().unwrap();
        prop_assert!(a.graph.vertex_count() <= 60);
        prop_assert!(is_free(&a).is_ok());
        let d = fundamental_domain(&a).unwrap();
        prop_assert_eq!(d.vertices.len() * g.order(), a.graph.vertex_count());
        let c = babai_contract(&a).unwrap();
        prop_assert_eq!(c.cayley.vertex_count(), g.order());
        prop_assert!(verify_cayley_multigraph(&c.cayley).is_ok());
        if is_planar(&a.graph) {
            prop_assert!(is_planar(&c.cayley.graph));
        }
    }
}
