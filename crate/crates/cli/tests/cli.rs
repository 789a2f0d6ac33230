use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ybx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ybx")).args(args).output().expect("spawn ybx")
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = ybx(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

// bijective, but the rack operation is not self-distributive at (1,1,2)
const NOT_YBE: &str = "3\n0 1 2\n0 1 2\n0 1 2\n\n0 0 0\n1 1 2\n2 2 1\n";

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", NOT_YBE);
    assert_eq!(ybx(&["validate", "--builtin", "conj_s3"]).status.code(), Some(0));
    let v = ybx(&["validate", "--file", &bad]);
    assert_eq!(v.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&v.stdout).contains("(1,1,2)"));
    assert_eq!(ybx(&["verify", "--file", &bad]).status.code(), Some(1));
    assert_eq!(ybx(&["verify", "--builtin", "flip_2", "--samples", "20"]).status.code(), Some(0));

    let garbage = write(dir.path(), "garbage.txt", "3\n0 1 x\n");
    assert_eq!(ybx(&["validate", "--file", &garbage]).status.code(), Some(2));
    assert_eq!(ybx(&["homology", "--builtin", "no_such"]).status.code(), Some(2));
    assert_eq!(ybx(&["homology", "--builtin", "flip_2", "--ring", "GF:4"]).status.code(), Some(2));
    assert_eq!(ybx(&["homology", "--builtin", "flip_2", "--file", &bad]).status.code(), Some(2));
    // homology refuses tables that are not solutions
    assert_eq!(ybx(&["homology", "--file", &bad]).status.code(), Some(2));
}

#[test]
fn rack_file_matches_builtin() {
    let dir = tempfile::tempdir().unwrap();
    let rack = write(dir.path(), "r3.txt", "# dihedral quandle of order 3\nrack\n0 2 1\n2 1 0\n1 0 2\n");
    let args = |src: &[&'static str]| {
        let mut v = vec!["homology", "--variant", "fixpairs", "--max", "3"];
        v.extend_from_slice(src);
        v
    };
    let from_file = json(&[args(&["--file"]), vec![rack.as_str()]].concat());
    let builtin = json(&args(&["--builtin", "dihedral_3"]));
    assert_eq!(from_file["degrees"], builtin["degrees"]);
    let torsion: Vec<Value> = builtin["degrees"].as_array().unwrap().iter().map(|d| d["torsion"].clone()).collect();
    assert_eq!(torsion, vec![Value::from(Vec::<u64>::new()); 3].into_iter().chain([serde_json::json!([3])]).collect::<Vec<_>>());
}

#[test]
fn table_and_json_agree() {
    let j = json(&["homology", "--builtin", "flip_2", "--ring", "Q", "--variant", "invo", "--max", "3"]);
    let out = ybx(&["homology", "--builtin", "flip_2", "--ring", "Q", "--variant", "invo", "--max", "3"]);
    let table = String::from_utf8(out.stdout).unwrap();
    let ranks: Vec<u64> = table
        .lines()
        .filter(|l| l.starts_with("H_"))
        .map(|l| l.split_whitespace().nth(2).unwrap().parse().unwrap())
        .collect();
    let from_json: Vec<u64> = j["degrees"].as_array().unwrap().iter().map(|d| d["free_rank"].as_u64().unwrap()).collect();
    assert_eq!(ranks, from_json);
    assert_eq!(ranks, vec![1, 2, 1, 0]);
}

#[test]
fn twisted_homology_of_r3() {
    // t = 2; values cross-checked with a dense Smith form of the rack formula
    for (variant, top) in [("full", serde_json::json!([3, 3])), ("fixpairs", serde_json::json!([3]))] {
        let j = json(&["homology", "--builtin", "dihedral_3", "--ring", "ZT:2", "--coeff", "twisted", "--variant", variant, "--max", "3"]);
        let torsion: Vec<Value> = j["degrees"].as_array().unwrap().iter().map(|d| d["torsion"].clone()).collect();
        assert_eq!(torsion, vec![serde_json::json!([]), serde_json::json!([3]), serde_json::json!([3]), top], "{variant}");
        assert!(j["degrees"].as_array().unwrap().iter().all(|d| d["free_rank"] == 0));
    }
}

#[test]
fn cocycles_feed_cup() {
    let dir = tempfile::tempdir().unwrap();
    let z = json(&["cocycles", "--builtin", "dihedral_3", "--deg", "1", "--ring", "GF:5"]);
    let basis = z["cocycles"].as_array().unwrap();
    assert!(!basis.is_empty());
    let f = write(dir.path(), "f.json", &basis[0].to_string());
    let g = write(dir.path(), "g.json", &serde_json::json!({"degree": 1, "values": basis[0]}).to_string());
    let cup = json(&["cup", "--builtin", "dihedral_3", "--f", &f, "--g", &g, "--ring", "GF:5"]);
    assert_eq!(cup["degree"], 2);
    assert_eq!(cup["f_is_cocycle"], true);
    assert_eq!(cup["product_is_cocycle"], true);

    // closed form on a non-cocycle: (f⌣g)(x,y) = f(x◁y)g(y) − f(y)g(x) for a rack
    let h = write(dir.path(), "h.json", r#"{"0": 1, "(1)": 0, "2": 2}"#);
    let p = json(&["cup", "--builtin", "dihedral_3", "--f", &h, "--g", &h]);
    let fv = [1i64, 0, 2];
    for x in 0..3 {
        for y in 0..3 {
            let t = (2 * y + 3 - x) % 3;
            let expected = fv[t] * fv[y] - fv[y] * fv[x];
            assert_eq!(p["product"][format!("{x},{y}")], expected, "({x},{y})");
        }
    }
}

#[test]
fn nichols_and_experiment_run() {
    let j = json(&["nichols", "--builtin", "flip_3"]);
    let dims: Vec<u64> = j["dims"].as_array().unwrap().iter().map(|d| d["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1, 3, 3, 1, 0]);
    let e = json(&["experiment", "--builtin", "flip_2", "--max-length", "2"]);
    assert!(!e["rows"].as_array().unwrap().is_empty());
    assert_eq!(ybx(&["compare", "--builtin", "dihedral_3", "--max", "2", "--samples", "20"]).status.code(), Some(0));
}
