use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn htm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_htm")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn analyze_f5_is_proven() {
    let out = htm(&["--format", "json", "analyze", &data("f5.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["condition_c"], true);
    assert_eq!(v["is_htm"], true);
    assert_eq!(v["verdict"]["route"], "bezoutian");
    assert_eq!(v["verdict"]["inertia"], serde_json::json!([10, 0, 0]));
    assert_eq!(v["certificate"]["pd"], true);
    assert_eq!(v["certificate"]["matrix_size"], 10);
    assert_eq!(v["markov"][2], serde_json::json!([["16", "-2i"], ["2i", "2"]]));
    assert_eq!(v["continued_fraction"]["c"].as_array().unwrap().len(), 3);
    assert_eq!(v["continued_fraction"]["d"].as_array().unwrap().len(), 2);
}

#[test]
fn analyze_f3_uses_root_oracle() {
    let out = htm(&["--format", "json", "analyze", &data("f3.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["condition_c"], false);
    assert_eq!(v["verdict"]["route"], "root_oracle");
    assert_eq!(v["verdict"]["hurwitz"], true);
    assert_eq!(v["certificate"]["pd"], Value::Null);
}

#[test]
fn analyze_not_htm_exits_2() {
    let out = htm(&["analyze", &data("z2_minus_1.json")]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("HTM: no"), "{text}");
}

#[test]
fn text_and_json_agree() {
    for (file, route) in [("f5.json", "bezoutian"), ("f3.json", "root_oracle")] {
        let text = htm(&["analyze", &data(file)]);
        let json = htm(&["--format", "json", "analyze", &data(file)]);
        assert_eq!(text.status.code(), json.status.code());
        let t = String::from_utf8_lossy(&text.stdout);
        assert!(t.contains(&format!("verdict: hurwitz (route {route})")), "{t}");
        assert_eq!(json_of(&json)["verdict"]["route"], route);
    }
}

#[test]
fn float_backend_falls_back_to_oracle() {
    let out = htm(&["--backend", "float", "--format", "json", "analyze", &data("f5.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["backend"], "float");
    assert_eq!(v["verdict"]["route"], "root_oracle");
    assert_eq!(v["verdict"]["hurwitz"], true);
}

#[test]
fn parse_error_reports_position() {
    let out = htm(&["analyze", &data("bad_number.json")]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 5 column"), "{err}");
    assert!(err.contains("zero denominator"), "{err}");
}

#[test]
fn markov_reconstruct_round_trip() {
    let out = htm(&["--format", "json", "markov", &data("f5.json")]);
    assert_eq!(out.status.code(), Some(0));
    let s = json_of(&out);
    let expected: Value = serde_json::from_str(&std::fs::read_to_string(data("s5.json")).unwrap()).unwrap();
    assert_eq!(s, expected);

    let out = htm(&["--format", "json", "reconstruct", &data("s5.json"), "--degree", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let f = json_of(&out);
    assert_eq!(f["degree"], 5);
    assert_eq!(f["coefficients"][2], serde_json::json!([["486/37", "0"], ["-264/37i", "6"]]));
    assert_eq!(f["coefficients"][5], serde_json::json!([["292/37", "-2i"], ["2i", "2"]]));
}

#[test]
fn bezout_certificate_and_unavailable_note() {
    let v = json_of(&htm(&["--format", "json", "bezout", &data("f5.json")]));
    assert_eq!(v["route"], "bezoutian");
    assert_eq!(v["pd"], true);
    let minors = v["leading_minors"].as_array().unwrap();
    assert_eq!(minors.len(), 10);
    assert!(minors.iter().all(|m| !m.as_str().unwrap().starts_with('-')));

    let out = htm(&["--format", "json", "bezout", &data("f3.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert!(v["note"].as_str().unwrap().contains("Condition C"));
    assert_eq!(v["pd"], Value::Null);
}

#[test]
fn complete_example_writes_f6() {
    let dir = std::env::temp_dir().join(format!("htm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out_file = dir.join("f6.json");
    let out = htm(&[
        "--format",
        "json",
        "complete",
        &data("p3.json"),
        &data("seeds_b1.json"),
        "--out",
        out_file.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["used_transpose"], true);
    assert_eq!(v["f2n"]["coefficients"][3], serde_json::json!([["2732/109", "-8"], ["-8", "8"]]));
    let analyzed = htm(&["--format", "json", "analyze", out_file.to_str().unwrap()]);
    assert_eq!(analyzed.status.code(), Some(0));
    assert_eq!(json_of(&analyzed)["certificate"]["pd"], true);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn scan_emits_seed_and_is_reproducible() {
    let a = json_of(&htm(&["--format", "json", "--seed", "9", "--trials", "12", "scan", "--n", "3"]));
    let b = json_of(&htm(&["--format", "json", "--seed", "9", "--trials", "12", "scan", "--n", "3", "--sequential"]));
    assert_eq!(a["seed"], 9);
    assert_eq!(a["trials"], 12);
    assert_eq!(a, b);
    assert!(a["note"].as_str().unwrap().contains("conjecture"));
}

#[test]
fn rejects_non_positive_tolerance() {
    let out = htm(&["--tol-root", "0", "analyze", &data("f5.json")]);
    assert_ne!(out.status.code(), Some(0));
}
