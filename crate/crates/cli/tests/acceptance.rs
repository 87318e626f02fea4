//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines are always printed.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use pcl_core::cayley::build_amalgam_ball;
use pcl_core::corpus;
use pcl_core::covariance::{OrientationClass, OrientationOracle};
use pcl_core::cyclecut::star_generation_check;
use pcl_core::embedding::{kuratowski_witness, planarity_test, verify_witness, KuratowskiKind, PlanarityResult};
use pcl_core::augment::vertex_connectivity;
use pcl_core::ends::{classify_ends, classify_group, default_radii, EndsClass};
use pcl_core::presentation::{coset_enumerate, parse_presentation};
use pcl_core::suites::{babai_suite, bookkeeping_suite, ladder_suite, seed_from_env, separation_suite};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn a4() -> Outcome {
    let p = parse_presentation("group A4 { gens: k r; rels: k^2, r^3, (k*r)^3; involutions: k; }")
        .map_err(|e| e.to_string())?;
    let g = coset_enumerate(&p, 100).map_err(|e| e.to_string())?;
    check(g.order() == 12, format!("order {}", g.order()))?;
    let cg = corpus::cayley("a4").map_err(|e| e.to_string())?;
    check(cg.vertex_count() == 12 && cg.edge_count() == 18, "size")?;
    let emb = match planarity_test(&cg.graph).map_err(|e| e.to_string())? {
        PlanarityResult::Planar(e) => e,
        PlanarityResult::NonPlanar(_) => return Err("not planar".into()),
    };
    let k = vertex_connectivity(&cg.graph);
    check(k == 3, format!("connectivity {k}"))?;
    let fv: Vec<_> = emb.face_vector().into_iter().collect();
    check(fv == vec![(3, 4), (6, 4)], format!("face vector {fv:?}"))?;
    let table = OrientationOracle::new(&cg).and_then(|o| o.table()).map_err(|e| e.to_string())?;
    check(table.iter().all(|&c| c == OrientationClass::Preserving), "some element reverses")?;
    Ok("order 12, V=12 E=18, planar, 3-connected, faces {3:4, 6:4}, all preserving".into())
}

fn prism() -> Outcome {
    let cg = corpus::cayley("prism").map_err(|e| e.to_string())?;
    let g = cg.group.clone().ok_or("no group")?;
    let emb = match planarity_test(&cg.graph).map_err(|e| e.to_string())? {
        PlanarityResult::Planar(e) => e,
        PlanarityResult::NonPlanar(_) => return Err("not planar".into()),
    };
    check(
        (cg.vertex_count(), cg.edge_count(), emb.face_count()) == (8, 12, 6),
        format!("V={} E={} F={}", cg.vertex_count(), cg.edge_count(), emb.face_count()),
    )?;
    check(vertex_connectivity(&cg.graph) == 3, "not 3-connected")?;
    let table = OrientationOracle::new(&cg).and_then(|o| o.table()).map_err(|e| e.to_string())?;
    let b = g.resolve("(0,1)").map_err(|e| e.to_string())?;
    let a2 = g.resolve("(2,0)").map_err(|e| e.to_string())?;
    check(table[b] == OrientationClass::Reversing, "(0,1) not reversing")?;
    check(table[a2] == OrientationClass::Preserving, "(2,0) not preserving")?;
    let mut pairs = 0;
    for x in 0..g.order() {
        for y in 0..g.order() {
            check(table[g.mul(x, y)].sign() == table[x].sign() * table[y].sign(), format!("pair ({x},{y})"))?;
            pairs += 1;
        }
    }
    Ok(format!("V=8 E=12 F=6, (0,1) reversing, (2,0) preserving, homomorphism on {pairs} pairs"))
}

fn k44() -> Outcome {
    let cg = corpus::cayley("k44").map_err(|e| e.to_string())?;
    match planarity_test(&cg.graph).map_err(|e| e.to_string())? {
        PlanarityResult::Planar(_) => Err("reported planar".into()),
        PlanarityResult::NonPlanar(w) => {
            check(w.kind == KuratowskiKind::K33, format!("witness is {}", w.kind))?;
            verify_witness(&cg.graph, &w)?;
            let again = kuratowski_witness(&cg.graph).ok_or("no witness on second call")?;
            check(again == w, "witness not deterministic")?;
            Ok(format!("non-planar, verified K3,3 subdivision with {} paths", w.paths.len()))
        }
    }
}

fn amalgam() -> Outcome {
    let e = |x: corpus::CorpusError| x.to_string();
    let (a, p) = (corpus::group("a4").map_err(e)?, corpus::group("z4xz2").map_err(e)?);
    let gens_a = corpus::resolve_gens(&a, &[("k", "k"), ("r", "r")]).map_err(e)?;
    let gens_p = corpus::resolve_gens(&p, &[("a", "(1,0)"), ("b", "(0,1)")]).map_err(e)?;
    let k = a.resolve("k").map_err(|x| x.to_string())?;
    let b = p.resolve("(0,1)").map_err(|x| x.to_string())?;
    let ball = build_amalgam_ball(&a, k, &p, b, &gens_a, &gens_p, 3).map_err(|x| x.to_string())?;
    check(
        matches!(planarity_test(&ball.graph), Ok(PlanarityResult::Planar(_))),
        "ball is not planar",
    )?;
    let degrees: Vec<usize> = ball.interior_vertices().map(|v| ball.graph.degree(v)).collect();
    check(!degrees.is_empty() && degrees.iter().all(|&d| d == 5), format!("interior degrees {degrees:?}"))?;
    let report = corpus::verify_case("amalgam-ball").map_err(e)?;
    let obstruction = report.checks.iter().find(|c| c.name == "obstruction").ok_or("no obstruction check")?;
    check(report.pass && obstruction.pass, format!("corpus case: {}", obstruction.detail))?;
    Ok(format!(
        "R=3 ball planar, {} vertices, {} interior of degree 5, obstruction holds",
        ball.vertex_count(),
        degrees.len()
    ))
}

fn ends() -> Outcome {
    check(classify_group(&corpus::group("a4").map_err(|e| e.to_string())?).class == EndsClass::Zero, "a4")?;
    let want = [
        ("z-cross-z", EndsClass::One),
        ("z", EndsClass::Two),
        ("z-cross-z3", EndsClass::Two),
        ("f2", EndsClass::Cantor),
        ("amalgam", EndsClass::Cantor),
    ];
    let mut parts = vec!["a4 0".to_string()];
    for (tag, class) in want {
        let (r, big_r) = default_radii(tag);
        let fam = corpus::family(tag).map_err(|e| e.to_string())?;
        let rep = classify_ends(&fam, r, big_r).map_err(|e| e.to_string())?;
        check(rep.class == class, format!("{tag}: got {}, want {class}", rep.class))?;
        check(rep.stabilized, format!("{tag}: not stabilized at ({r},{big_r})"))?;
        parts.push(format!("{tag} {class}"));
    }
    Ok(parts.join(", "))
}

fn suite(rep: pcl_core::suites::SuiteReport, what: &str) -> Outcome {
    if rep.passed() {
        Ok(format!("{} {what}, 0 failures", rep.trials))
    } else {
        Err(format!("{} of {} failed; first: {}", rep.failures.len(), rep.trials, rep.failures[0]))
    }
}

fn separation(seed: u64) -> Outcome {
    let rep = separation_suite(seed, 500);
    check(rep.parity_violations == 0, format!("{} parity violations", rep.parity_violations))?;
    if let Some(f) = rep.suite.failures.first() {
        return Err(format!("{} failures; first: {f}", rep.suite.failures.len()));
    }
    Ok(format!(
        "500 trials, 0 parity violations, {} oracle queries agree, {} sums were cycles",
        rep.oracle_queries, rep.sums_that_were_cycles
    ))
}

fn stars() -> Outcome {
    for b in corpus::CAYLEY_GRAPHS {
        let cg = corpus::cayley(b.name).map_err(|e| e.to_string())?;
        let s = star_generation_check(&cg).map_err(|e| e.to_string())?;
        check(s.ok && s.rank == cg.vertex_count() - 1, format!("{}: rank {} of {}", b.name, s.rank, s.expected))?;
    }
    Ok(format!("rank |V|-1 on all {} bundled graphs", corpus::CAYLEY_GRAPHS.len()))
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_pcl"))
            .args(["corpus", "verify", "--json"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    check(a.status.success() && b.status.success(), "corpus verify failed")?;
    check(a.stdout == b.stdout, "outputs differ")?;
    Ok(format!("two runs, {} identical bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    let seed = seed_from_env();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("A4 truncated tetrahedron", Box::new(a4)),
        ("prism orientation", Box::new(prism)),
        ("K4,4 Kuratowski witness", Box::new(k44)),
        ("amalgam ball", Box::new(amalgam)),
        ("ends classes", Box::new(ends)),
        ("Babai contraction suite", Box::new(move || suite(babai_suite(seed, 120), "free actions"))),
        ("ladder suite", Box::new(move || suite(ladder_suite(seed, 30), "plane graphs"))),
        ("separation suite", Box::new(move || separation(seed))),
        ("cut-space stars", Box::new(stars)),
        ("embedding bookkeeping", Box::new(move || suite(bookkeeping_suite(seed, 40), "embeddings"))),
        ("determinism", Box::new(determinism)),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = f();
        let took = t.elapsed();
        let slow = took > Duration::from_secs(10);
        match &outcome {
            Ok(detail) if !slow => println!("criterion {:>2}: PASS {name}: {detail} ({took:.2?})", i + 1),
            Ok(detail) => println!("criterion {:>2}: FAIL {name}: {detail} but took {took:.2?}", i + 1),
            Err(why) => println!("criterion {:>2}: FAIL {name}: {why} ({took:.2?})", i + 1),
        }
        if outcome.is_err() || slow {
            failed += 1;
        }
    }
    println!("seed {seed}, {} of {} passed in {:.2?}", criteria.len() - failed, criteria.len(), start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
