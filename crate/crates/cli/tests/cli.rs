use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conecross"))
        .args(args)
        .env_remove("CONECROSS_THREADS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn gen_writes_graph_files() {
    let dir = tempfile::tempdir().unwrap();
    let f3 = path(dir.path(), "f3.json");
    assert!(run(&["gen", "--family", "fk", "--k", "3", "-o", &f3]).status.success());
    let g: Value = serde_json::from_str(&std::fs::read_to_string(&f3).unwrap()).unwrap();
    assert_eq!(g["format"], "conecross-graph-v1");
    assert_eq!(g["n"], 9);

    let out = run(&["gen", "--family", "mult", "--base", "fig1", "--r", "2"]);
    let total: u64 = json(&out)["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e[2].as_u64().unwrap())
        .sum();
    assert_eq!(total, 42);

    let out = run(&["gen", "--family", "cone", "--base", &f3]);
    assert_eq!(json(&out)["n"], 10);
}

#[test]
fn cr_reports_exact_values() {
    let out = run(&["cr", "fig1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!((v["lower"].as_u64(), v["upper"].as_u64()), (Some(3), Some(3)));
    assert_eq!(v["status"], "exact");

    let v = json(&run(&["cr", "fig3", "--cone"]));
    assert_eq!(v["upper"], 5);
    assert_eq!(v["verified"], true);

    let v = json(&run(&["cr", "k6", "--threads", "1"]));
    assert_eq!(v["upper"], 3);
}

#[test]
fn cr_accepts_its_own_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let cert = path(dir.path(), "k5.cert.json");
    assert!(run(&["cr", "k5", "--cert-out", &cert]).status.success());
    let v = json(&run(&["cr", "k5", "--seed-cert", &cert]));
    assert_eq!(v["upper"], 1);
    // A certificate of K5 is no drawing of K6.
    assert_eq!(run(&["cr", "k6", "--seed-cert", &cert]).status.code(), Some(2));
}

#[test]
fn book_and_convert() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&run(&["book", "k5", "--pages", "2", "--optimize", "both"]));
    assert_eq!(v["crossings"], 1);
    assert_eq!(json(&run(&["book", "k4"]))["crossings"], 1);
    assert_eq!(json(&run(&["book", "c6"]))["crossings"], 0);

    let book = path(dir.path(), "k5.book.json");
    let dot = path(dir.path(), "k5.dot");
    let out = run(&["book", "k5", "--pages", "2", "-o", &book, "--dot", &dot]);
    assert!(out.status.success());
    let b: Value = serde_json::from_str(&std::fs::read_to_string(&book).unwrap()).unwrap();
    assert_eq!(b["format"], "conecross-book-v1");
    assert!(std::fs::read_to_string(&dot).unwrap().contains("style=dashed"));

    let out = run(&["convert12", "k5", "--order", "0,1,2,3,4"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!((v["k"].as_u64(), v["crossings"].as_u64()), (Some(5), Some(1)));
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn bounds_reports() {
    let rows = json(&run(&["bounds", "--k", "10"]));
    let phi = rows
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["bound"] == "hh_phi_upper")
        .unwrap();
    assert_eq!(phi["value"], 11.0);
    assert_eq!(phi["conditional"], true);

    let rows = json(&run(&["bounds", "--k", "1"]));
    assert!(rows
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["bound"] == "cone_lower_simple" && r["value"] == 3.0));

    let rows = json(&run(&["bounds", "--k", "0"]));
    assert!(rows
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["value"].as_f64() == Some(0.0)));

    let rows = json(&run(&["bounds", "--k", "4", "--multigraph"]));
    assert!(!rows.as_array().unwrap().iter().any(|r| r["bound"] == "cone_lower_simple"));

    assert_eq!(run(&["bounds", "--k", "3", "--cone", "6"]).status.code(), Some(0));
    assert_eq!(run(&["bounds", "--k", "3", "--cone", "5"]).status.code(), Some(1));
    assert_eq!(run(&["bounds", "--k", "3", "--cone", "5", "--multigraph"]).status.code(), Some(0));
}

#[test]
fn experiments() {
    let rows = json(&run(&["experiment", "fs-small"]));
    let values: Vec<u64> = rows
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["cone_upper"]["value"].as_u64().unwrap())
        .collect();
    assert_eq!(values, [3, 5, 6, 8, 10]);
    assert_eq!(rows[1]["graph"], "fig3");

    let out = run(&["experiment", "hh-table", "--csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let z: Vec<&str> = text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap()).collect();
    assert_eq!(z, ["1", "3", "9", "18", "36", "60", "100", "150"]);

    let rows = json(&run(&["experiment", "family-points"]));
    assert_eq!(rows[0]["crossings"], 3);
    assert_eq!(rows[0]["cone_crossings"], 6);

    let a = run(&["experiment", "cor22-suite", "--trials", "200", "--seed", "9"]);
    let b = run(&["experiment", "cor22-suite", "--trials", "200", "--seed", "9"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["cr", "/no/such/file.json"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "--family", "kn"]).status.code(), Some(2));
    assert_eq!(run(&["book", "k4", "--order", "0,1,2"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}
