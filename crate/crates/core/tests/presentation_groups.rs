use pcl_core::corpus;
use pcl_core::presentation::{coset_enumerate, parse_presentation, CosetEnumerationError};

#[test]
fn bundled_group_orders() {
    let want = [
        ("a4", 12),
        ("d4", 8),
        ("d5", 10),
        ("d6", 12),
        ("q8", 8),
        ("s3", 6),
        ("z2", 2),
        ("z2xz2", 4),
        ("z3", 3),
        ("z4", 4),
        ("z4xz2", 8),
        ("z5", 5),
        ("z6", 6),
        ("z12", 12),
    ];
    for (key, order) in want {
        let g = corpus::group(key).unwrap();
        assert_eq!(g.order(), order, "{key}");
        g.validate().unwrap();
        g.check_relators(&corpus::presentation(key).unwrap()).unwrap();
    }
}

#[test]
fn a4_from_text() {
    let p = parse_presentation("group A4 { gens: k r; rels: k^2, r^3, (k*r)^3; involutions: k; }").unwrap();
    let g = coset_enumerate(&p, 100).unwrap();
    assert_eq!(g.order(), 12);
    assert!(!g.is_abelian());
    let k = g.generator("k").unwrap();
    let r = g.generator("r").unwrap();
    assert_eq!(g.element_order(k), 2);
    assert_eq!(g.element_order(r), 3);
    assert_eq!(g.element_order(g.mul(k, r)), 3);
}

#[test]
fn emit_round_trips() {
    for key in ["a4", "q8", "z4xz2", "d6"] {
        let p = corpus::presentation(key).unwrap();
        let again = parse_presentation(&p.emit()).unwrap();
        assert_eq!(p, again, "{key}");
    }
}

#[test]
fn infinite_group_hits_the_budget() {
    let p = parse_presentation("group Z2 { gens: a b; rels: a*b*a^-1*b^-1; }").unwrap();
    assert!(matches!(coset_enumerate(&p, 50), Err(CosetEnumerationError::BudgetExhausted { .. })));
}

#[test]
fn malformed_input_is_rejected() {
    assert!(parse_presentation("group { gens: ; }").is_err());
    assert!(parse_presentation("group G { gens: a; rels: b^2; }").is_err());
}
