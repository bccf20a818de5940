use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arrgroup")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let o = run(&all);
    (serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}")), o.status.code().unwrap())
}

fn scratch(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn x3_affine_is_certified() {
    let o = run(&["inject", "--example", "x3-affine", "--flats", "auto"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("CERTIFIED"));
}

#[test]
fn kohno_cone_finiteness() {
    let o = run(&["finiteness", "--example", "kohno-cone"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("F_4, not F_5"));
    let (v, code) = json(&["finiteness", "--example", "kohno-cone"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "F_4, not F_5");
}

#[test]
fn brunnian_word_is_unknown() {
    // [A14,[A24,A34]] expanded
    let w = "A14^-1 A34^-1 A24^-1 A34 A24 A14 A24^-1 A34^-1 A24 A34";
    let o = run(&["word", "--example", "braid4", "--flats", "auto", w]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("UNKNOWN"));
    let (v, _) = json(&["word", "--example", "braid4", "A14"]);
    assert_eq!(v["verdict"], "NONTRIVIAL");
}

#[test]
fn braid4_injectivity_is_inconclusive() {
    let (v, code) = json(&["inject", "--example", "braid4"]);
    assert_eq!(code, 2);
    assert_eq!(v["verdict"], "INCONCLUSIVE");
}

#[test]
fn input_errors_exit_one() {
    assert_eq!(run(&["flats", "--example", "nope"]).status.code(), Some(1));
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["flats"]).status.code(), Some(1));
    assert_eq!(run(&["flats", "--example", "x3-cone", "--flats", "/nonexistent.json"]).status.code(), Some(1));
    let bad = scratch("bad-arrangement.json");
    fs::write(&bad, r#"{"name":"bad","ambient_dim":2,"hyperplanes":[{"label":"a","coeffs":["0","1","0"]},{"label":"b","coeffs":["0","2","0"]}]}"#)
        .unwrap();
    let o = run(&["flats", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn arrangement_file_round_trip() {
    let (v, code) = json(&["example", "kohno-cone"]);
    assert_eq!(code, 0);
    let path = scratch("kohno-cone.json");
    fs::write(&path, serde_json::to_string_pretty(&v["arrangement"]).unwrap()).unwrap();
    let from_file = json(&["flats", "--input", path.to_str().unwrap()]).0;
    let from_corpus = json(&["flats", "--example", "kohno-cone"]).0;
    assert_eq!(from_file, from_corpus);
}

#[test]
fn explicit_family_file() {
    let path = scratch("x3-family.json");
    fs::write(&path, r#"{"flats": [["a1","a3","a5"], ["a1","a2","a6"], ["a3","a4","a6"]]}"#).unwrap();
    let (v, code) = json(&["cokernel", "--example", "x3-cone", "--flats", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["rank"], 1);
    assert_eq!(v["torsion_free"], true);
    fs::write(&path, r#"[["a1","a9"]]"#).unwrap();
    assert_eq!(run(&["cokernel", "--example", "x3-cone", "--flats", path.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn certificate_written_and_verified() {
    let path = scratch("kohno-certificate.json");
    let p = path.to_str().unwrap();
    assert_eq!(run(&["inject", "--example", "kohno-affine", "--certificate-out", p]).status.code(), Some(0));
    assert_eq!(run(&["inject", "--example", "kohno-affine", "--verify", p]).status.code(), Some(0));
    assert_eq!(run(&["inject", "--example", "x3-affine", "--verify", p]).status.code(), Some(1));
}

#[test]
fn projectivized_acm() {
    let (v, code) = json(&["inject", "--example", "acm(2,2,2)"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "CERTIFIED");
}

#[test]
fn decompose_and_poincare() {
    let (v, code) = json(&["decompose", "--example", "braid4"]);
    assert_eq!(code, 0);
    assert_eq!((v["dim_h3"].as_u64(), v["local_sum"].as_u64()), (Some(10), Some(8)));
    assert_eq!(v["decomposable_over_q"], false);
    let o = run(&["poincare", "--example", "braid3"]);
    assert!(stdout(&o).contains("1 + 3t + 2t^2"));
}
