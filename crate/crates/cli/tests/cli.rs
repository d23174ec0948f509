use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn zkpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zkpoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn record(args: &[&str]) -> Value {
    let out = zkpoly(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("JSON record")
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn gamma_of_majority() {
    let r = record(&["gamma", "--fn", "maj", "--n", "3", "--d", "1", "--k", "1", "--mode", "exact"]);
    assert_eq!(r["result"]["gamma"]["fraction"], "6/8");
    assert_eq!(r["result"]["rechecked"], true);
    assert_eq!(r["command"], "gamma");
    assert!(r["timing"]["wall_seconds"].is_number());

    let r = record(&["gamma", "--fn", "maj", "--n", "3", "--d", "0", "--k", "2", "--mode", "exact"]);
    assert_eq!(r["result"]["gamma"]["fraction"], "4/8");
    assert_eq!(r["result"]["search_space_size"], "4");
}

#[test]
fn heuristic_on_a_file_is_repeatable() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.bfn");
    let p = path.to_str().unwrap();
    let out = zkpoly(&["table", "--fn", "elemsym", "--n", "6", "--t", "2", "--out", p]);
    assert!(out.status.success());
    let bytes = std::fs::read(&path).unwrap();
    assert_eq!(&bytes[..5], b"BFN1\x06");
    assert_eq!(bytes.len(), 5 + 8);

    let source = format!("file:{p}");
    let args = ["gamma", "--fn", &source, "--d", "1", "--k", "2", "--mode", "heuristic", "--seed", "7"];
    let a = record(&args);
    let b = record(&args);
    assert_eq!(without_timing(a.clone()), without_timing(b));
    assert_eq!(a["seed"], 7);
    assert_eq!(a["result"]["lower_bound_only"], true);
}

#[test]
fn exact_search_refuses_large_spaces() {
    let out = zkpoly(&["gamma", "--fn", "maj", "--n", "8", "--d", "3", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    // (2^2)^93 = 2^186
    assert!(err.contains("refusing"), "{err}");
    assert!(err.contains("98079714615416886934934209737619787751599303819750539264"), "{err}");
}

#[test]
fn verify_commands_pass() {
    let out = zkpoly(&["verify", "rel-lbd"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("PASS verify rel-lbd"));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["result"]["evidence"]["max"]["fraction"], "20/32");

    let r = record(&["verify", "kummer", "--limit", "512"]);
    assert_eq!(r["result"]["passed"], true);
    let r = record(&["verify", "ramsey-probe", "--trials", "10"]);
    assert_eq!(r["result"]["evidence"]["restriction_failures"], 0);
}

#[test]
fn majority_bound_small_cells() {
    let r = record(&["experiment", "maj-bound", "--max-n", "5"]);
    let rows = r["result"]["rows"].as_array().unwrap();
    let row = rows
        .iter()
        .find(|r| r["n"] == 5 && r["d"] == 1 && r["k"] == 2)
        .unwrap();
    assert_eq!(row["satisfied"], true);
    assert_eq!(row["vacuous"], true);

    let out = zkpoly(&["experiment", "maj-bound", "--max-n", "3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,d,k,gamma,gamma_float,gamma_binary,gamma_binary_float,equals_binary,bound_float,vacuous,satisfied"
    );
    assert!(lines.next().unwrap().starts_with("1,1,1,2/2,1.0,"));
}

#[test]
fn sym_sep_rows_are_at_least_half() {
    let r = record(&["experiment", "sym-sep", "--ns", "4,8,12", "--heuristic-max-n", "8"]);
    assert_eq!(r["result"]["passed"], true);
    let rows = r["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[1]["agreement"], "136/256");
    assert!(rows[2]["heuristic_gamma"].is_null());
}

#[test]
fn quad_sep_csv() {
    let out = zkpoly(&["experiment", "quad-sep", "--n", "3", "--trials", "3", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    for line in text.lines().skip(1) {
        assert!(line.contains(",48/64,0.75,true,"), "{line}");
    }
}

#[test]
fn convert_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let ring = dir.path().join("p.json");
    let nc = dir.path().join("nc.json");
    let back = dir.path().join("back.json");
    let poly = r#"{"n":3,"k":2,"d":2,"terms":[{"mask":1,"coeff":3},{"mask":6,"coeff":2}]}"#;
    std::fs::write(&ring, poly).unwrap();
    let s = |p: &Path| p.to_str().unwrap().to_string();
    let out = zkpoly(&["convert", "--input", &s(&ring), "--to", "nc", "--out", &s(&nc)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let nc_poly: zkpoly::NCPoly = serde_json::from_slice(&std::fs::read(&nc).unwrap()).unwrap();
    assert_eq!(nc_poly.depth(), 2);
    let out = zkpoly(&["convert", "--input", &s(&nc), "--to", "ring", "--d", "2", "--out", &s(&back)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let a = zkpoly::RingPoly::from_json(poly).unwrap();
    let b = zkpoly::RingPoly::from_json(&std::fs::read_to_string(&back).unwrap()).unwrap();
    assert_eq!(a.eval_all().unwrap(), b.eval_all().unwrap());
}

#[test]
fn lift_values() {
    let r = record(&["lift", "--fn", "maj", "--n", "2", "--k", "3"]);
    assert_eq!(r["result"]["values"], serde_json::json!([0, 0, 0, 4]));
}

#[test]
fn f_h_sources() {
    let a = record(&["gamma", "--fn", "f_h", "--n", "2", "--hd", "1", "--hseed", "3", "--d", "1"]);
    let b = record(&["gamma", "--fn", "f_h_general", "--n", "2", "--hd", "1", "--hseed", "3", "--phi", "0:0", "--psi", "0:0", "--d", "1"]);
    assert_eq!(a["result"], b["result"]);
    let bad = zkpoly(&["gamma", "--fn", "f_h", "--n", "2", "--hd", "3", "--d", "1"]);
    assert_eq!(bad.status.code(), Some(2));
}
