//! Every corpus entry's golden outputs are recomputed and compared byte for byte with the
//! checked-in files. Set `UPDATE_GOLDEN=1` to rewrite them.

use std::fs;
use std::path::PathBuf;
use std::process::Command;

use arrgroup::corpus;
use arrgroup_cli::golden_outputs;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn names() -> Vec<String> {
    let mut v: Vec<String> = corpus::CORPUS.iter().map(|s| s.to_string()).collect();
    v.push("acm(2,2,2)".into());
    v
}

fn file_name(name: &str) -> String {
    format!("{}.json", name.replace(['(', ')'], "").replace(',', "-"))
}

#[test]
fn golden_outputs_regenerate_identically() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for name in names() {
        let g = golden_outputs(&corpus::example(&name).unwrap()).unwrap();
        let text = serde_json::to_string_pretty(&g).unwrap() + "\n";
        let path = golden_dir().join(file_name(&name));
        if update {
            fs::write(&path, &text).unwrap();
        }
        let stored = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(text, stored, "{name}");
    }
}

#[test]
fn example_command_reports_the_golden_outputs() {
    let out = Command::new(env!("CARGO_BIN_EXE_arrgroup"))
        .args(["--format", "json", "example", "x3-cone"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let stored: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(golden_dir().join("x3-cone.json")).unwrap()).unwrap();
    assert_eq!(v["golden"], stored);
}
