use std::process::{Command, Output};

use serde_json::Value;

fn pcl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcl"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = pcl(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).expect("JSON output");
    assert_eq!(v["schema"], "pcl/1");
    v
}

#[test]
fn parse_and_enumerate_example_files() {
    let p = json(&["parse", "examples/a4.grp"]);
    assert_eq!(p["name"], "A4");
    let g = json(&["enumerate", "examples/a4.grp"]);
    assert_eq!(g["order"], 12);
    assert_eq!(g["abelian"], false);
    let z6 = json(&["parse", "examples/z6-double.grp"]);
    assert_eq!(z6["labels"], serde_json::json!(["a#1", "a#2"]));
}

#[test]
fn build_from_file_with_tuple_generators() {
    let v = json(&["build", "--complete", "examples/z4xz2.grp", "--gens", "(1,0),(0,1)"]);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 8);
    let edges = v["edges"].as_array().unwrap();
    assert_eq!(edges.len(), 12);
    let mut labels: Vec<_> = edges.iter().map(|e| e["label"].as_str().unwrap()).collect();
    labels.sort();
    labels.dedup();
    assert_eq!(labels, ["a", "b"]);
}

#[test]
fn dot_and_svg_formats() {
    let out = pcl(&["build", "--bundled", "prism", "--format", "dot"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph cayley {"));
    assert_eq!(dot.matches("->").count(), 12);
    let out = pcl(&["embed", "--bundled", "a4", "--format", "svg"]);
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<circle").count(), 12);
}

#[test]
fn embed_reports_witness_for_k44() {
    let v = json(&["embed", "--bundled", "k44"]);
    assert_eq!(v["planar"], false);
    assert_eq!(v["witness"]["kind"], "K3,3");
    assert_eq!(v["witness"]["verified"], true);
    let v = json(&["embed", "--bundled", "a4"]);
    assert_eq!(v["planar"], true);
    assert_eq!(v["genus"], 0);
}

#[test]
fn orient_prism() {
    let v = json(&["orient", "--bundled", "prism"]);
    let classes: Vec<(String, String)> = v["elements"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["element"].as_str().unwrap().into(), e["class"].as_str().unwrap().into()))
        .collect();
    assert_eq!(classes.len(), 8);
    assert_eq!(classes.iter().filter(|(_, c)| c == "reversing").count(), 4);
}

#[test]
fn covariant_connectivity_cutspace() {
    assert_eq!(json(&["covariant", "--bundled", "a4"])["covariant"], true);
    assert_eq!(json(&["connectivity", "--bundled", "a4"])["connectivity"], 3);
    let c = json(&["cutspace", "--bundled", "prism"]);
    assert_eq!(c["rank"], 7);
    assert_eq!(c["ok"], true);
}

#[test]
fn augment_and_faces() {
    let v = json(&["augment", "--bundled", "c4"]);
    assert_eq!(v["output"]["genus"], 0);
    assert_eq!(v["connectivity"], 3);
    let f = json(&["faces", "--family", "z-cross-z", "--ball", "3"]);
    assert!(f["face_count"].as_u64().unwrap() > 0);
}

#[test]
fn ends_defaults_and_explicit_radii() {
    let v = json(&["ends", "--family", "z-cross-z3", "-r", "2", "-R", "6"]);
    assert_eq!(v["class"], 2);
    assert_eq!(v["stabilized"], true);
    assert_eq!(json(&["ends", "--family", "f2"])["class"], "cantor");
    assert_eq!(json(&["ends", "--group", "a4"])["class"], 0);
}

#[test]
fn contract_is_seeded() {
    let a = pcl(&["contract", "--group", "d4", "--seed", "5"]);
    let b = pcl(&["contract", "--group", "d4", "--seed", "5"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["contracted"]["vertices"].as_array().unwrap().len(), 8);
}

#[test]
fn corpus_text_and_json() {
    let out = pcl(&["corpus", "verify"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "PASS a4-truncated-tetrahedron"));
    assert!(text.ends_with("all cases passed\n"));
    let v = json(&["corpus", "verify", "--json", "--case", "prism-z4xz2"]);
    assert_eq!(v["pass"], true);
    let list = pcl(&["corpus", "list"]);
    assert!(String::from_utf8(list.stdout).unwrap().contains("k44"));
}

#[test]
fn errors_exit_with_two() {
    assert_eq!(pcl(&["build", "--bundled", "nope"]).status.code(), Some(2));
    assert_eq!(pcl(&["build"]).status.code(), Some(2));
    assert_eq!(pcl(&["faces", "--bundled", "k44"]).status.code(), Some(2));
    assert_eq!(pcl(&["corpus", "verify", "--case", "missing"]).status.code(), Some(2));
    let out = pcl(&["parse", "examples/missing.grp"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}
