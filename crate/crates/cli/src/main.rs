//! `pcl`: command-line front end for pcl-core.

use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use pcl_core::actions::{babai_contract, seeded_free_action, verify_cayley_multigraph};
use pcl_core::augment::{ladder_augment, vertex_connectivity};
use pcl_core::cayley::{build_ball, build_cayley, CayleyGraph};
use pcl_core::corpus::{self, SCHEMA};
use pcl_core::covariance::{canonical_rotation, is_covariant, Covariance, OrientationOracle};
use pcl_core::cyclecut::star_generation_check;
use pcl_core::embedding::{
    classify_faces, planarity_test, search_consistent_embeddings, trace_faces, verify_witness, Embedding, PlanarityResult,
    RotationSystem,
};
use pcl_core::ends::{classify_ends, classify_group, default_radii};
use pcl_core::export::{embedding_json, graph_json, to_dot, to_svg};
use pcl_core::group::GroupModel;
use pcl_core::presentation::{coset_enumerate, Presentation};
use pcl_core::suites::seed_from_env;

#[derive(Parser)]
#[command(name = "pcl", version, about = "Planar Cayley graphs: embeddings, actions, separation and ends")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a .grp presentation and print its canonical form.
    Parse { file: String },
    /// Enumerate the finite group of a presentation.
    Enumerate {
        file: String,
        #[arg(long, default_value_t = 10_000)]
        max_cosets: usize,
        /// Include the multiplication table.
        #[arg(long)]
        table: bool,
    },
    /// Build a Cayley graph or ball.
    Build {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Planarity test with embedding or Kuratowski witness.
    Embed {
        #[command(flatten)]
        src: Source,
        /// List label-consistent planar embeddings instead.
        #[arg(long)]
        search_consistent: bool,
        /// Maximum number of consistent embeddings to print.
        #[arg(long, default_value_t = 10)]
        limit: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Facial walks of the planar embedding.
    Faces {
        #[command(flatten)]
        src: Source,
    },
    /// Check that left multiplication maps faces to faces.
    Covariant {
        #[command(flatten)]
        src: Source,
    },
    /// Orientation class of every group element.
    Orient {
        #[command(flatten)]
        src: Source,
    },
    /// Contract a random free action along its fundamental domain.
    Contract {
        /// Bundled group key or .grp file.
        #[arg(long)]
        group: String,
        #[arg(long)]
        gens: Option<String>,
        /// Defaults to PCL_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 60)]
        max_vertices: usize,
    },
    /// Ladder augmentation to a 3-connected plane supergraph.
    Augment {
        #[command(flatten)]
        src: Source,
    },
    /// Vertex connectivity.
    Connectivity {
        #[command(flatten)]
        src: Source,
    },
    /// Rank of the orbit of the identity's vertex star in the cut space.
    Cutspace {
        #[command(flatten)]
        src: Source,
    },
    /// Classify the number of ends.
    Ends {
        /// Bundled family tag.
        #[arg(long)]
        family: Option<String>,
        /// Finite group (bundled key or .grp file); always 0 ends.
        #[arg(long)]
        group: Option<String>,
        #[arg(short = 'r')]
        r: Option<usize>,
        #[arg(short = 'R')]
        big_r: Option<usize>,
    },
    /// Bundled example cases.
    Corpus {
        #[command(subcommand)]
        cmd: CorpusCmd,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    /// Run the verification cases; exits 1 if any check fails.
    Verify {
        #[arg(long)]
        case: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// List bundled cases, groups, graphs and families.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
    Svg,
}

#[derive(Args)]
struct Source {
    /// Complete Cayley graph of a .grp file or bundled group key.
    #[arg(long, value_name = "GRP")]
    complete: Option<String>,
    /// Generators, e.g. "(1,0),(0,1)" or "a=(1,0),c=(1,1)".
    #[arg(long)]
    gens: Option<String>,
    /// Bundled Cayley graph name.
    #[arg(long)]
    bundled: Option<String>,
    /// Ball radius for --family or --amalgam.
    #[arg(long, value_name = "R")]
    ball: Option<usize>,
    /// Bundled infinite family tag.
    #[arg(long)]
    family: Option<String>,
    /// The bundled amalgam of A4 and Z4xZ2 over an involution.
    #[arg(long)]
    amalgam: bool,
}

fn load_presentation(key: &str) -> Result<Presentation> {
    if Path::new(key).exists() {
        let text = std::fs::read_to_string(key).with_context(|| format!("reading {key}"))?;
        Ok(Presentation::parse(&text)?)
    } else if corpus::PRESENTATIONS.iter().any(|(k, _)| *k == key) {
        Ok(corpus::presentation(key)?)
    } else {
        bail!("`{key}` is neither a file nor a bundled group")
    }
}

fn load_group(key: &str, max_cosets: usize) -> Result<(Presentation, GroupModel)> {
    let p = load_presentation(key)?;
    let g = coset_enumerate(&p, max_cosets)?;
    Ok((p, g))
}

/// Splits at commas outside parentheses.
fn split_top(s: &str) -> Vec<String> {
    let (mut out, mut cur, mut depth) = (Vec::new(), String::new(), 0i32);
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if c == ',' && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    out.push(cur);
    out.into_iter().map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect()
}

/// Generator list with labels. Unlabelled tuples that are unit vectors take
/// the matching generator symbol; other tuples are called `s1, s2, ...`.
fn parse_gens(p: &Presentation, g: &GroupModel, text: Option<&str>) -> Result<Vec<(String, usize)>> {
    let Some(text) = text else {
        return p
            .generator_labels()
            .into_iter()
            .map(|(label, sym)| Ok((label, g.generator(&sym).ok_or_else(|| anyhow!("unknown generator {sym}"))?)))
            .collect();
    };
    let mut out: Vec<(String, usize)> = Vec::new();
    for (i, item) in split_top(text).iter().enumerate() {
        let (label, expr) = match item.split_once('=') {
            Some((l, e)) => (Some(l.trim().to_string()), e.trim().to_string()),
            None => (None, item.clone()),
        };
        let elem = g.resolve(&expr)?;
        let mut label = label.unwrap_or_else(|| {
            if let Some(inner) = expr.strip_prefix('(').and_then(|x| x.strip_suffix(')')) {
                let coords: Vec<&str> = inner.split(',').map(str::trim).collect();
                let ones: Vec<usize> = coords.iter().enumerate().filter(|(_, c)| **c == "1").map(|(j, _)| j).collect();
                let zeros = coords.iter().filter(|c| **c == "0").count();
                if ones.len() == 1 && zeros + 1 == coords.len() && ones[0] < p.generators.len() {
                    return p.generators[ones[0]].clone();
                }
                format!("s{}", i + 1)
            } else {
                expr.clone()
            }
        });
        let base = label.clone();
        let mut k = 1;
        while out.iter().any(|(l, _)| *l == label) {
            k += 1;
            label = format!("{base}#{k}");
        }
        out.push((label, elem));
    }
    Ok(out)
}

impl Source {
    fn load(&self) -> Result<CayleyGraph> {
        let chosen = [self.complete.is_some(), self.bundled.is_some(), self.family.is_some(), self.amalgam]
            .iter()
            .filter(|&&x| x)
            .count();
        if chosen != 1 {
            bail!("choose exactly one of --complete, --bundled, --family, --amalgam");
        }
        if let Some(key) = &self.complete {
            let (p, g) = load_group(key, 10_000)?;
            let gens = parse_gens(&p, &g, self.gens.as_deref())?;
            return Ok(build_cayley(&g, &gens)?);
        }
        if let Some(name) = &self.bundled {
            return Ok(corpus::cayley(name)?);
        }
        let fam = match &self.family {
            Some(tag) => corpus::family(tag)?,
            None => corpus::amalgam_family()?,
        };
        let radius = match (self.ball, self.amalgam) {
            (Some(r), _) => r,
            (None, true) => 3,
            (None, false) => bail!("--family needs --ball R"),
        };
        Ok(build_ball(&fam, radius)?)
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) ends the process quietly.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}

fn print_json(v: &impl Serialize) -> Result<()> {
    emit(&format!("{}\n", serde_json::to_string_pretty(v)?));
    Ok(())
}

fn with_schema(v: impl Serialize) -> Result<Value> {
    let mut v = serde_json::to_value(v)?;
    if let Value::Object(m) = &mut v {
        m.insert("schema".into(), json!(SCHEMA));
    }
    Ok(v)
}

fn face_vector_json(emb: &Embedding) -> Value {
    Value::Object(emb.face_vector().into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

fn planar_or_fail(cg: &CayleyGraph) -> Result<Embedding> {
    let rot = canonical_rotation(&cg.graph).ok_or_else(|| anyhow!("graph is not planar"))?;
    Ok(trace_faces(&cg.graph, &rot)?)
}

fn layout_embedding(cg: &CayleyGraph) -> Result<Embedding> {
    let rot = canonical_rotation(&cg.graph).unwrap_or_else(|| RotationSystem::identity(&cg.graph));
    Ok(trace_faces(&cg.graph, &rot)?)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Parse { file } => {
            let p = load_presentation(&file)?;
            print_json(&json!({
                "schema": SCHEMA,
                "name": p.name,
                "generators": p.generators.iter().zip(&p.multiplicities).map(|(g, m)| json!({
                    "symbol": g, "multiplicity": m, "involution": p.is_involution(g),
                })).collect::<Vec<_>>(),
                "relators": p.relators.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                "labels": p.generator_labels().into_iter().map(|(l, _)| l).collect::<Vec<_>>(),
                "canonical": p.emit(),
            }))?;
        }
        Cmd::Enumerate { file, max_cosets, table } => {
            let (_, g) = load_group(&file, max_cosets)?;
            let mut v = json!({
                "schema": SCHEMA,
                "name": g.name,
                "order": g.order(),
                "abelian": g.is_abelian(),
                "elements": g.element_names(),
                "generators": g.generators().iter().map(|(s, x)| json!({"symbol": s, "element": g.name(*x)})).collect::<Vec<_>>(),
            });
            if table {
                v["table"] = json!(g.table());
            }
            print_json(&v)?;
        }
        Cmd::Build { src, format } => {
            let cg = src.load()?;
            match format {
                Format::Json => print_json(&graph_json(&cg))?,
                Format::Dot => emit(&to_dot(&cg)),
                Format::Svg => emit(&to_svg(&cg, &layout_embedding(&cg)?)),
            }
        }
        Cmd::Embed { src, search_consistent, limit, format } => {
            let cg = src.load()?;
            if search_consistent {
                let found = search_consistent_embeddings(&cg)?;
                print_json(&json!({
                    "schema": SCHEMA,
                    "count": found.len(),
                    "embeddings": found.iter().take(limit).map(|c| json!({
                        "label_order": c.label_names(&cg),
                        "spins": c.spins,
                        "face_vector": face_vector_json(&c.embedding),
                    })).collect::<Vec<_>>(),
                }))?;
                return Ok(0);
            }
            match planarity_test(&cg.graph)? {
                PlanarityResult::Planar(emb) => match format {
                    Format::Svg => emit(&to_svg(&cg, &emb)),
                    Format::Dot => emit(&to_dot(&cg)),
                    Format::Json => print_json(&json!({
                        "schema": SCHEMA,
                        "planar": true,
                        "genus": emb.genus,
                        "face_vector": face_vector_json(&emb),
                        "embedding": embedding_json(&emb),
                    }))?,
                },
                PlanarityResult::NonPlanar(w) => print_json(&json!({
                    "schema": SCHEMA,
                    "planar": false,
                    "witness": {
                        "kind": w.kind.to_string(),
                        "verified": verify_witness(&cg.graph, &w).is_ok(),
                        "branch_vertices": w.branch_vertices.iter().map(|&v| &cg.names[v]).collect::<Vec<_>>(),
                        "paths": w.paths.iter().map(|p| p.iter().map(|&v| &cg.names[v]).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    },
                }))?,
            }
        }
        Cmd::Faces { src } => {
            let cg = src.load()?;
            let emb = planar_or_fail(&cg)?;
            let report = classify_faces(&cg, &emb);
            print_json(&json!({
                "schema": SCHEMA,
                "face_count": emb.face_count(),
                "face_vector": face_vector_json(&emb),
                "finite": report.finite,
                "frontier_touching": report.frontier_touching,
                "max_finite_length": report.max_finite_length,
                "faces": emb.faces.iter().map(|f| json!({
                    "length": f.len(),
                    "finite": !f.darts.iter().any(|&d| cg.frontier[cg.graph.tail(d)]),
                    "vertices": f.vertices(&cg.graph).iter().map(|&v| &cg.names[v]).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            }))?;
        }
        Cmd::Covariant { src } => {
            let cg = src.load()?;
            let emb = planar_or_fail(&cg)?;
            let result = is_covariant(&cg, &emb)?;
            let v = match result {
                Covariance::Covariant => json!({"schema": SCHEMA, "covariant": true}),
                Covariance::Violation { generator, face } => json!({
                    "schema": SCHEMA,
                    "covariant": false,
                    "violation": {"generator": generator, "face": face},
                }),
            };
            print_json(&v)?;
        }
        Cmd::Orient { src } => {
            let cg = src.load()?;
            let oracle = OrientationOracle::new(&cg)?;
            let table = oracle.table()?;
            print_json(&json!({
                "schema": SCHEMA,
                "elements": table.iter().enumerate().map(|(x, c)| json!({"element": cg.names[x], "class": c})).collect::<Vec<_>>(),
            }))?;
        }
        Cmd::Contract { group, gens, seed, max_vertices } => {
            let (p, g) = load_group(&group, 10_000)?;
            let gens = parse_gens(&p, &g, gens.as_deref())?;
            let seed = seed.unwrap_or_else(seed_from_env);
            let elems: Vec<usize> = gens.iter().map(|&(_, x)| x).collect();
            let vg = seeded_free_action(&g, &elems, max_vertices, seed)?;
            let action = vg.lift()?;
            let c = babai_contract(&action)?;
            let verified = verify_cayley_multigraph(&c.cayley);
            let planar_in = matches!(planarity_test(&action.graph)?, PlanarityResult::Planar(_));
            let planar_out = matches!(planarity_test(&c.cayley.graph)?, PlanarityResult::Planar(_));
            print_json(&json!({
                "schema": SCHEMA,
                "seed": seed,
                "input": {
                    "vertices": action.graph.vertex_count(),
                    "edges": action.graph.edge_count(),
                    "planar": planar_in,
                },
                "domain": c.domain,
                "contracted": graph_json(&c.cayley),
                "planar": planar_out,
                "verified": verified.is_ok(),
                "error": verified.as_ref().err(),
            }))?;
            if verified.is_err() || (planar_in && !planar_out) {
                return Ok(1);
            }
        }
        Cmd::Augment { src } => {
            let cg = src.load()?;
            let emb = planar_or_fail(&cg)?;
            let frontier = cg.radius.map(|_| cg.frontier.as_slice());
            let (h, hemb, report) = ladder_augment(&cg.graph, &emb, frontier)?;
            print_json(&json!({
                "schema": SCHEMA,
                "input": {"vertices": cg.vertex_count(), "edges": cg.edge_count()},
                "output": {"vertices": h.vertex_count(), "edges": h.edge_count(), "genus": hemb.genus},
                "connectivity": vertex_connectivity(&h),
                "report": report,
            }))?;
        }
        Cmd::Connectivity { src } => {
            let cg = src.load()?;
            print_json(&json!({
                "schema": SCHEMA,
                "vertices": cg.vertex_count(),
                "edges": cg.edge_count(),
                "connectivity": vertex_connectivity(&cg.graph),
            }))?;
        }
        Cmd::Cutspace { src } => {
            let cg = src.load()?;
            let check = star_generation_check(&cg)?;
            print_json(&with_schema(&check)?)?;
            if !check.ok {
                return Ok(1);
            }
        }
        Cmd::Ends { family, group, r, big_r } => {
            let report = match (family, group) {
                (Some(tag), None) => {
                    let (dr, dbig) = default_radii(&tag);
                    classify_ends(&corpus::family(&tag)?, r.unwrap_or(dr), big_r.unwrap_or(dbig))?
                }
                (None, Some(key)) => classify_group(&load_group(&key, 10_000)?.1),
                _ => bail!("choose exactly one of --family and --group"),
            };
            print_json(&with_schema(&report)?)?;
        }
        Cmd::Corpus { cmd: CorpusCmd::List } => {
            print_json(&json!({
                "schema": SCHEMA,
                "cases": corpus::CASES,
                "groups": corpus::PRESENTATIONS.iter().map(|(k, _)| k).collect::<Vec<_>>(),
                "graphs": corpus::CAYLEY_GRAPHS.iter().map(|b| b.name).collect::<Vec<_>>(),
                "families": corpus::FAMILY_TAGS,
            }))?;
        }
        Cmd::Corpus { cmd: CorpusCmd::Verify { case, json } } => {
            let report = match case {
                Some(name) => {
                    let c = corpus::verify_case(&name)?;
                    corpus::VerifyReport { schema: SCHEMA, pass: c.pass, cases: vec![c] }
                }
                None => corpus::verify_all()?,
            };
            if json {
                print_json(&report)?;
            } else {
                for c in &report.cases {
                    emit(&format!("{} {}\n", if c.pass { "PASS" } else { "FAIL" }, c.case));
                    for ch in &c.checks {
                        emit(&format!("  {} {}: {}\n", if ch.pass { "ok  " } else { "FAIL" }, ch.name, ch.detail));
                    }
                }
                emit(&format!("{}\n", if report.pass { "all cases passed" } else { "some cases failed" }));
            }
            if !report.pass {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
