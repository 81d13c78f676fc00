//! CLI surface tests: wire formats, exit codes, and the small panels
//! that are checkable by hand.

use std::io::Write as _;
use std::process::Command;

use serde_json::Value;

use cospectra::gen;
use cospectra::graph::{self, Graph};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cospectra"))
}

fn write_corpus(graphs: &[&Graph]) -> (tempfile::TempDir, std::path::PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corpus.g6");
    let mut f = std::fs::File::create(&path).unwrap();
    for g in graphs {
        writeln!(f, "{}", graph::to_graph6(g).unwrap()).unwrap();
    }
    (dir, path)
}

fn json_lines(stdout: &[u8]) -> Vec<Value> {
    String::from_utf8(stdout.to_vec())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn invariants_k1_panel() {
    let k1 = Graph::empty(1).unwrap();
    let (_dir, path) = write_corpus(&[&k1]);
    let out = bin().arg("invariants").arg("--input").arg(&path).output().unwrap();
    assert!(out.status.success());
    let panel = &json_lines(&out.stdout)[0];
    // phi = x, walk matrix [1], det 1, n odd so eta = 1
    assert_eq!(panel["char_poly"], serde_json::json!(["0", "1"]));
    assert_eq!(panel["walk_matrix"], serde_json::json!([["1"]]));
    assert_eq!(panel["eta"]["eta"], "1");
}

#[test]
fn invariants_star_panel() {
    // K_{1,4}: phi = x^5 - 4x^3
    let star = gen::star_graph(5);
    let (_dir, path) = write_corpus(&[&star]);
    let out = bin().arg("invariants").arg("--input").arg(&path).output().unwrap();
    assert!(out.status.success());
    let panel = &json_lines(&out.stdout)[0];
    assert_eq!(panel["char_poly"], serde_json::json!(["0", "0", "0", "-4", "0", "1"]));
}

#[test]
fn verify_pair_cospectral_mates() {
    // C4 + isolated vertex and the 4-star share x^5 - 4x^3
    let (_dir, path) = write_corpus(&[&gen::c4_plus_k1(), &gen::star_graph(5)]);
    let out = bin().arg("verify-pair").arg("--input").arg(&path).output().unwrap();
    assert!(out.status.success());
    let v = &json_lines(&out.stdout)[0];
    assert_eq!(v["cospectral"], Value::Bool(true));
    assert_eq!(v["walk_mod4"]["verdict"], "pass");
    assert_eq!(v["complement_mod4"]["verdict"], "pass");
    assert_eq!(v["eta_parity"]["verdict"], "pass");
}

#[test]
fn verify_pair_not_cospectral() {
    let (_dir, path) = write_corpus(&[&gen::complete_graph(3), &gen::complete_graph(4)]);
    let out = bin().arg("verify-pair").arg("--input").arg(&path).output().unwrap();
    assert!(out.status.success());
    let v = &json_lines(&out.stdout)[0];
    assert_eq!(v["cospectral"], Value::Bool(false));
    assert_eq!(v["walk_mod4"]["verdict"], "not-cospectral");
}

#[test]
fn oracle_k3_length_4() {
    // Tr(A^4) for K3: eigenvalues {2,-1,-1} give 16+1+1 = 18
    let (_dir, path) = write_corpus(&[&gen::complete_graph(3)]);
    let out = bin()
        .args(["oracle", "--max-power", "4", "--input"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let rep = &json_lines(&out.stdout)[0];
    assert_eq!(rep["closed_walks"], "18");
    assert_eq!(rep["m"], 4);
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.g6");
    std::fs::write(&path, "not graph6 at all\n").unwrap();
    let out = bin().arg("invariants").arg("--input").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_input_exits_2() {
    let out = bin().arg("invariants").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumeration_cap_exits_3() {
    let (_dir, path) = write_corpus(&[&gen::complete_graph(8)]);
    let out = bin()
        .args(["oracle", "--max-power", "12", "--input"])
        .arg(&path)
        .env("COSPECTRA_CAP", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn certify_and_mine_round_trip() {
    let (_dir, path) = write_corpus(&[&gen::c4_plus_k1(), &gen::star_graph(5), &gen::complete_graph(5)]);
    let mine = bin().arg("mine").arg("--input").arg(&path).output().unwrap();
    assert!(mine.status.success());
    let classes = json_lines(&mine.stdout);
    assert_eq!(classes.len(), 2);
    let sizes: Vec<usize> = classes.iter().map(|c| c["members"].as_array().unwrap().len()).collect();
    assert!(sizes.contains(&2) && sizes.contains(&1));

    let certify = bin().arg("certify").arg("--input").arg(&path).output().unwrap();
    assert!(certify.status.success());
    assert_eq!(json_lines(&certify.stdout).len(), 3);
}

#[test]
fn check_lemmas_seeded() {
    let out = bin()
        .args(["check-lemmas", "--max-n", "3", "--max-power", "6", "--samples", "5", "--seed", "9"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let summary = &json_lines(&out.stdout)[0];
    assert_eq!(summary["all_pass"], Value::Bool(true));
    assert_eq!(summary["matrix_samples"], 5);
}
