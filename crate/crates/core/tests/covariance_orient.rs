use pcl_core::corpus;
use pcl_core::covariance::{is_covariant, whitney_unique, Covariance, CovarianceError, OrientationClass, OrientationOracle};
use pcl_core::embedding::{planar_embedding, search_consistent_embeddings, trace_faces};
use pcl_core::graph::named;

#[test]
fn a4_every_element_preserves() {
    let cg = corpus::cayley("a4").unwrap();
    let table = OrientationOracle::new(&cg).unwrap().table().unwrap();
    assert_eq!(table.len(), 12);
    assert!(table.iter().all(|&c| c == OrientationClass::Preserving));
}

#[test]
fn prism_classes_form_a_homomorphism() {
    let cg = corpus::cayley("prism").unwrap();
    let g = cg.group.clone().unwrap();
    let oracle = OrientationOracle::new(&cg).unwrap();
    let table = oracle.table().unwrap();
    assert_eq!(table[g.resolve("(0,1)").unwrap()], OrientationClass::Reversing);
    assert_eq!(table[g.resolve("(2,0)").unwrap()], OrientationClass::Preserving);
    assert_eq!(table[g.resolve("(1,0)").unwrap()], OrientationClass::Preserving);
    for x in 0..g.order() {
        for y in 0..g.order() {
            assert_eq!(table[g.mul(x, y)].sign(), table[x].sign() * table[y].sign());
        }
    }
}

#[test]
fn planar_three_connected_cayley_graphs_are_covariant() {
    for name in ["a4", "prism", "d4", "d5", "d6", "hexagon"] {
        let cg = corpus::cayley(name).unwrap();
        let Ok(w) = whitney_unique(&cg.graph) else { continue };
        assert_eq!(is_covariant(&cg, &w.embedding).unwrap(), Covariance::Covariant, "{name}");
    }
}

#[test]
fn consistent_embeddings_are_covariant() {
    let cg = corpus::cayley("a4").unwrap();
    let found = search_consistent_embeddings(&cg).unwrap();
    assert!(!found.is_empty());
    for f in found.iter().filter(|f| f.embedding.genus == 0) {
        assert_eq!(is_covariant(&cg, &f.embedding).unwrap(), Covariance::Covariant);
    }
}

#[test]
fn whitney_rejects_low_connectivity() {
    assert!(matches!(whitney_unique(&named::cycle(5)), Err(CovarianceError::NotThreeConnected(2))));
    assert!(matches!(whitney_unique(&named::complete(5)), Err(CovarianceError::NonPlanar)));
    let cube = whitney_unique(&named::cube()).unwrap();
    assert_eq!(cube.connectivity, 3);
    let direct = trace_faces(&named::cube(), &planar_embedding(&named::cube()).unwrap()).unwrap();
    assert_eq!(cube.embedding.face_vector(), direct.face_vector());
}

#[test]
fn truncated_balls_are_rejected() {
    let ball = pcl_core::cayley::build_ball(&corpus::family("z-cross-z").unwrap(), 2).unwrap();
    assert!(matches!(OrientationOracle::new(&ball), Err(CovarianceError::Truncated)));
}
