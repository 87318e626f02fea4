//! Bundled presentations, Cayley graphs and infinite families, and the
//! verification cases run by `pcl corpus verify`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::augment::vertex_connectivity;
use crate::cayley::{build_ball, build_cayley, CayleyError, CayleyGraph, Family};
use crate::covariance::{is_covariant, whitney_unique, Covariance, CovarianceError, OrientationClass, OrientationOracle};
use crate::cyclecut::star_generation_check;
use crate::embedding::{planarity_test, search_consistent_embeddings, verify_witness, KuratowskiKind, PlanarityResult};
use crate::ends::{classify_ends, classify_group, default_radii, EndsClass};
use crate::group::GroupModel;
use crate::presentation::{coset_enumerate, Presentation};

pub const SCHEMA: &str = "pcl/1";

/// Coset budget used for bundled presentations.
pub const BUNDLED_BUDGET: usize = 1000;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("unknown bundled {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("bundled data is broken: {0}")]
    Broken(String),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
}

pub const PRESENTATIONS: &[(&str, &str)] = &[
    ("a4", "group A4 { gens: k r; rels: k^2, r^3, (k*r)^3; involutions: k; }"),
    ("d4", "group D4 { gens: r s; rels: r^4, s^2, (s*r)^2; involutions: s; }"),
    ("d5", "group D5 { gens: r s; rels: r^5, s^2, (s*r)^2; involutions: s; }"),
    ("d6", "group D6 { gens: r s; rels: r^6, s^2, (s*r)^2; involutions: s; }"),
    ("q8", "group Q8 { gens: i j; rels: i^4, i^2*j^-2, j^-1*i*j*i; }"),
    ("s3", "group S3 { gens: s t; rels: s^2, t^2, (s*t)^3; involutions: s t; }"),
    ("z2", "group Z2 { gens: b; rels: b^2; involutions: b; }"),
    ("z2xz2", "group Z2xZ2 { gens: a b; rels: a^2, b^2, (a*b)^2; involutions: a b; }"),
    ("z3", "group Z3 { gens: a; rels: a^3; }"),
    ("z4", "group Z4 { gens: a; rels: a^4; }"),
    ("z4xz2", "group Z4xZ2 { gens: a b; rels: a^4, b^2, a*b*a^-1*b^-1; involutions: b; }"),
    ("z5", "group Z5 { gens: a; rels: a^5; }"),
    ("z6", "group Z6 { gens: a; rels: a^6; }"),
    ("z12", "group Z12 { gens: a; rels: a^12; }"),
];

pub fn presentation(key: &str) -> Result<Presentation, CorpusError> {
    let text = PRESENTATIONS
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, t)| *t)
        .ok_or_else(|| CorpusError::Unknown { kind: "presentation", name: key.into() })?;
    Presentation::parse(text).map_err(|e| CorpusError::Broken(e.to_string()))
}

pub fn group(key: &str) -> Result<GroupModel, CorpusError> {
    coset_enumerate(&presentation(key)?, BUNDLED_BUDGET).map_err(|e| CorpusError::Broken(e.to_string()))
}

/// A bundled finite Cayley graph: group key and `(label, element)` pairs.
pub struct BundledCayley {
    pub name: &'static str,
    pub group: &'static str,
    pub gens: &'static [(&'static str, &'static str)],
}

pub const CAYLEY_GRAPHS: &[BundledCayley] = &[
    BundledCayley { name: "a4", group: "a4", gens: &[("k", "k"), ("r", "r")] },
    BundledCayley { name: "c4", group: "z4", gens: &[("a", "a")] },
    BundledCayley { name: "c6", group: "z6", gens: &[("a", "a")] },
    BundledCayley { name: "d4", group: "d4", gens: &[("r", "r"), ("s", "s")] },
    BundledCayley { name: "d5", group: "d5", gens: &[("r", "r"), ("s", "s")] },
    BundledCayley { name: "d6", group: "d6", gens: &[("r", "r"), ("s", "s")] },
    BundledCayley { name: "edge", group: "z2", gens: &[("b", "b")] },
    BundledCayley { name: "hexagon", group: "s3", gens: &[("s", "s"), ("t", "t")] },
    BundledCayley { name: "k44", group: "z4xz2", gens: &[("a", "(1,0)"), ("c", "(1,1)")] },
    BundledCayley { name: "prism", group: "z4xz2", gens: &[("a", "(1,0)"), ("b", "(0,1)")] },
    BundledCayley { name: "q8", group: "q8", gens: &[("i", "i"), ("j", "j")] },
    BundledCayley { name: "square", group: "z2xz2", gens: &[("a", "a"), ("b", "b")] },
    BundledCayley { name: "triangle", group: "z3", gens: &[("a", "a")] },
    BundledCayley { name: "z12", group: "z12", gens: &[("a", "a")] },
];

/// Resolves `(label, element text)` pairs against `g`.
pub fn resolve_gens(g: &GroupModel, gens: &[(&str, &str)]) -> Result<Vec<(String, usize)>, CorpusError> {
    gens.iter()
        .map(|&(l, x)| g.resolve(x).map(|e| (l.to_string(), e)).map_err(|e| CorpusError::Broken(e.to_string())))
        .collect()
}

pub fn cayley(name: &str) -> Result<CayleyGraph, CorpusError> {
    let b = CAYLEY_GRAPHS
        .iter()
        .find(|b| b.name == name)
        .ok_or_else(|| CorpusError::Unknown { kind: "Cayley graph", name: name.into() })?;
    let g = group(b.group)?;
    let gens = resolve_gens(&g, b.gens)?;
    Ok(build_cayley(&g, &gens)?)
}

pub const FAMILY_TAGS: &[&str] = &["amalgam", "f2", "z", "z-cross-z", "z-cross-z3", "z-gens-1-2"];

/// `A4 *_{k = (0,1)} (Z4 × Z2)` with generators `k, r` and `(1,0), (0,1)`.
pub fn amalgam_family() -> Result<Family, CorpusError> {
    let (a, p) = (group("a4")?, group("z4xz2")?);
    let gens_a = resolve_gens(&a, &[("k", "k"), ("r", "r")])?;
    let gens_p = resolve_gens(&p, &[("a", "(1,0)"), ("b", "(0,1)")])?;
    let b_a = a.resolve("k").map_err(|e| CorpusError::Broken(e.to_string()))?;
    let b_p = p.resolve("(0,1)").map_err(|e| CorpusError::Broken(e.to_string()))?;
    Ok(Family::amalgam(&a, b_a, &gens_a, &p, b_p, &gens_p)?)
}

pub fn family(tag: &str) -> Result<Family, CorpusError> {
    Ok(match tag {
        "z" => Family::integers(),
        "z-gens-1-2" => Family::integers_with(&[1, 2])?,
        "z-cross-z" => Family::free_abelian(2),
        "f2" => Family::free_group(2)?,
        "amalgam" => amalgam_family()?,
        t => match t.strip_prefix("z-cross-z").and_then(|n| n.parse::<usize>().ok()) {
            Some(n) if n >= 2 => Family::cyclic_times_integers(n)?,
            _ => return Err(CorpusError::Unknown { kind: "family", name: tag.into() }),
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub schema: &'static str,
    pub pass: bool,
    pub cases: Vec<CaseReport>,
}

struct Checks(Vec<Check>);

impl Checks {
    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, name: &str, got: T, want: T) {
        let pass = got == want;
        let detail = if pass { format!("{got:?}") } else { format!("got {got:?}, expected {want:?}") };
        self.0.push(Check { name: name.into(), pass, detail });
    }

    fn ok(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.0.push(Check { name: name.into(), pass, detail: detail.into() });
    }

    fn fail(&mut self, name: &str, err: impl std::fmt::Display) {
        self.ok(name, false, format!("error: {err}"));
    }
}

pub const CASES: &[&str] = &[
    "a4-truncated-tetrahedron",
    "amalgam-ball",
    "cutspace-stars",
    "ends-trichotomy",
    "k44-z4xz2",
    "prism-z4xz2",
    "z-cross-z3-ball",
];

pub fn verify_case(name: &str) -> Result<CaseReport, CorpusError> {
    let mut c = Checks(Vec::new());
    match name {
        "a4-truncated-tetrahedron" => a4_case(&mut c)?,
        "amalgam-ball" => amalgam_case(&mut c)?,
        "cutspace-stars" => cutspace_case(&mut c)?,
        "ends-trichotomy" => ends_case(&mut c)?,
        "k44-z4xz2" => k44_case(&mut c)?,
        "prism-z4xz2" => prism_case(&mut c)?,
        "z-cross-z3-ball" => zz3_case(&mut c)?,
        _ => return Err(CorpusError::Unknown { kind: "case", name: name.into() }),
    }
    let pass = c.0.iter().all(|x| x.pass);
    Ok(CaseReport { case: name.into(), pass, checks: c.0 })
}

/// Every case, run in parallel and reported in name order.
pub fn verify_all() -> Result<VerifyReport, CorpusError> {
    let cases = CASES.par_iter().map(|n| verify_case(n)).collect::<Result<Vec<_>, _>>()?;
    Ok(VerifyReport { schema: SCHEMA, pass: cases.iter().all(|c| c.pass), cases })
}

fn face_vector_map(fv: BTreeMap<usize, usize>) -> Vec<(usize, usize)> {
    fv.into_iter().collect()
}

fn orientation_table(cg: &CayleyGraph) -> Result<Vec<OrientationClass>, CovarianceError> {
    OrientationOracle::new(cg)?.table()
}

fn a4_case(c: &mut Checks) -> Result<(), CorpusError> {
    let g = group("a4")?;
    c.eq("order", g.order(), 12);
    let cg = cayley("a4")?;
    c.eq("vertices", cg.vertex_count(), 12);
    c.eq("edges", cg.edge_count(), 18);
    c.eq("vertex connectivity", vertex_connectivity(&cg.graph), 3);
    match whitney_unique(&cg.graph) {
        Ok(w) => {
            c.eq("planar", w.embedding.genus, 0);
            c.eq("face vector", face_vector_map(w.embedding.face_vector()), vec![(3, 4), (6, 4)]);
            c.ok("euler", w.embedding.check_euler(&cg.graph), "sum of face lengths and V - E + F");
            match is_covariant(&cg, &w.embedding) {
                Ok(cov) => c.eq("covariant", cov, Covariance::Covariant),
                Err(e) => c.fail("covariant", e),
            }
        }
        Err(e) => c.fail("whitney embedding", e),
    }
    // Independent face count: every genus-0 label-consistent rotation.
    match search_consistent_embeddings(&cg) {
        Ok(found) => {
            let vectors: Vec<_> = found.iter().map(|f| face_vector_map(f.embedding.face_vector())).collect();
            let agree = !vectors.is_empty() && vectors.iter().all(|v| *v == vec![(3, 4), (6, 4)]);
            c.ok("face vector oracle", agree, format!("{} consistent embeddings", found.len()));
        }
        Err(e) => c.fail("face vector oracle", e),
    }
    match orientation_table(&cg) {
        Ok(t) => c.eq(
            "all elements preserving",
            t.iter().filter(|&&x| x == OrientationClass::Preserving).count(),
            12,
        ),
        Err(e) => c.fail("all elements preserving", e),
    }
    Ok(())
}

fn prism_case(c: &mut Checks) -> Result<(), CorpusError> {
    let cg = cayley("prism")?;
    let g = cg.group.clone().unwrap();
    c.eq("vertices", cg.vertex_count(), 8);
    c.eq("edges", cg.edge_count(), 12);
    c.eq("vertex connectivity", vertex_connectivity(&cg.graph), 3);
    match whitney_unique(&cg.graph) {
        Ok(w) => {
            c.eq("faces", w.embedding.face_count(), 6);
            c.ok("euler", w.embedding.check_euler(&cg.graph), "sum of face lengths and V - E + F");
            match is_covariant(&cg, &w.embedding) {
                Ok(cov) => c.eq("covariant", cov, Covariance::Covariant),
                Err(e) => c.fail("covariant", e),
            }
        }
        Err(e) => c.fail("whitney embedding", e),
    }
    match orientation_table(&cg) {
        Ok(t) => {
            let at = |s: &str| g.resolve(s).map(|x| t[x]).ok();
            c.eq("(0,1) reversing", at("(0,1)"), Some(OrientationClass::Reversing));
            c.eq("(2,0) preserving", at("(2,0)"), Some(OrientationClass::Preserving));
            let mut pairs = 0;
            for x in 0..g.order() {
                for y in 0..g.order() {
                    if t[g.mul(x, y)].sign() == t[x].sign() * t[y].sign() {
                        pairs += 1;
                    }
                }
            }
            c.eq("homomorphism pairs", pairs, 64);
        }
        Err(e) => c.fail("orientation", e),
    }
    Ok(())
}

fn k44_case(c: &mut Checks) -> Result<(), CorpusError> {
    let cg = cayley("k44")?;
    c.eq("vertices", cg.vertex_count(), 8);
    c.eq("edges", cg.edge_count(), 16);
    match planarity_test(&cg.graph) {
        Ok(PlanarityResult::NonPlanar(w)) => {
            c.eq("kuratowski kind", w.kind, KuratowskiKind::K33);
            match verify_witness(&cg.graph, &w) {
                Ok(()) => c.ok("witness verified", true, format!("{} branch paths", w.paths.len())),
                Err(e) => c.fail("witness verified", e),
            }
        }
        Ok(PlanarityResult::Planar(_)) => c.ok("non-planar", false, "graph reported planar"),
        Err(e) => c.fail("non-planar", e),
    }
    Ok(())
}

fn amalgam_case(c: &mut Checks) -> Result<(), CorpusError> {
    let ball = build_ball(&amalgam_family()?, 3)?;
    match planarity_test(&ball.graph) {
        Ok(PlanarityResult::Planar(emb)) => {
            c.ok("ball planar", true, format!("{} vertices, {} faces", ball.vertex_count(), emb.face_count()));
            c.ok("euler", emb.check_euler(&ball.graph), "sum of face lengths and V - E + F");
        }
        Ok(PlanarityResult::NonPlanar(w)) => c.ok("ball planar", false, format!("{} subdivision found", w.kind)),
        Err(e) => c.fail("ball planar", e),
    }
    let degrees: Vec<usize> = ball.interior_vertices().map(|v| ball.graph.degree(v)).collect();
    c.ok(
        "interior degree 5",
        !degrees.is_empty() && degrees.iter().all(|&d| d == 5),
        format!("{} interior vertices", degrees.len()),
    );
    // The obstruction: A4 preserves orientation everywhere while (0,1)
    // reverses the prism.
    let a4_all = orientation_table(&cayley("a4")?).map(|t| t.iter().all(|&x| x == OrientationClass::Preserving));
    let prism = cayley("prism")?;
    let b = prism.group.as_ref().unwrap().resolve("(0,1)").map_err(|e| CorpusError::Broken(e.to_string()))?;
    let b_rev = OrientationOracle::new(&prism).and_then(|o| o.class(b)).map(|x| x == OrientationClass::Reversing);
    match (a4_all, b_rev) {
        (Ok(x), Ok(y)) => c.ok("obstruction", x && y, format!("a4 all preserving: {x}, (0,1) reversing: {y}")),
        (Err(e), _) | (_, Err(e)) => c.fail("obstruction", e),
    }
    Ok(())
}

fn zz3_case(c: &mut Checks) -> Result<(), CorpusError> {
    let fam = family("z-cross-z3")?;
    let ball = build_ball(&fam, 4)?;
    match planarity_test(&ball.graph) {
        Ok(PlanarityResult::Planar(_)) => c.ok("ball planar", true, format!("{} vertices", ball.vertex_count())),
        Ok(PlanarityResult::NonPlanar(w)) => c.ok("ball planar", false, format!("{} subdivision found", w.kind)),
        Err(e) => c.fail("ball planar", e),
    }
    let degrees: Vec<usize> = ball.interior_vertices().map(|v| ball.graph.degree(v)).collect();
    c.ok("interior degree 4", degrees.iter().all(|&d| d == 4), format!("{} interior vertices", degrees.len()));
    let (r, big_r) = default_radii("z-cross-z3");
    match classify_ends(&fam, r, big_r) {
        Ok(rep) => c.eq("two ends", (rep.class, rep.stabilized), (EndsClass::Two, true)),
        Err(e) => c.fail("two ends", e),
    }
    Ok(())
}

fn ends_case(c: &mut Checks) -> Result<(), CorpusError> {
    c.eq("a4", classify_group(&group("a4")?).class, EndsClass::Zero);
    let expect = [
        ("amalgam", EndsClass::Cantor),
        ("f2", EndsClass::Cantor),
        ("z", EndsClass::Two),
        ("z-cross-z", EndsClass::One),
        ("z-cross-z3", EndsClass::Two),
        ("z-gens-1-2", EndsClass::Two),
    ];
    for (tag, class) in expect {
        let (r, big_r) = default_radii(tag);
        match classify_ends(&family(tag)?, r, big_r) {
            Ok(rep) => c.eq(tag, (rep.class, rep.stabilized), (class, true)),
            Err(e) => c.fail(tag, e),
        }
    }
    Ok(())
}

fn cutspace_case(c: &mut Checks) -> Result<(), CorpusError> {
    for b in CAYLEY_GRAPHS {
        let cg = cayley(b.name)?;
        match star_generation_check(&cg) {
            Ok(s) => c.ok(b.name, s.ok, format!("rank {} of {}", s.rank, s.expected)),
            Err(e) => c.fail(b.name, e),
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_data_loads() {
        for (k, _) in PRESENTATIONS {
            group(k).unwrap();
        }
        for b in CAYLEY_GRAPHS {
            cayley(b.name).unwrap();
        }
        for t in FAMILY_TAGS {
            family(t).unwrap();
        }
        assert_eq!(group("q8").unwrap().order(), 8);
        assert!(family("nope").is_err());
    }

    #[test]
    fn every_case_passes() {
        let r = verify_all().unwrap();
        for case in &r.cases {
            for ch in &case.checks {
                assert!(ch.pass, "{}: {} {}", case.case, ch.name, ch.detail);
            }
        }
        assert!(r.pass);
    }
}
