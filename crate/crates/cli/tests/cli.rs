use std::process::{Command, Output};

use metarep::cyclotomic::CycNum;
use metarep::knotio::knot_by_name;
use metarep::rep::Representation;
use serde_json::Value;

fn metarep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_metarep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = metarep(&all);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn figure_eight_table() {
    let v = json(&["count", "4_1", "--n-range", "1..21"]);
    let got: Vec<i64> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["classes"].as_i64().unwrap())
        .collect();
    let table = [
        1, 2, 5, 10, 24, 50, 120, 270, 640, 1500, 3600, 8610, 20880, 50700, 124024, 304290, 750120,
        1854400, 4600200, 11440548, 28527320,
    ];
    assert_eq!(got, table);
}

#[test]
fn unknot_and_trefoil_counts() {
    let v = json(&["count", "unknot", "--n-range", "1..5"]);
    let rows = v["rows"].as_array().unwrap();
    assert!(rows[1..].iter().all(|r| r["classes"] == 0));
    let v = json(&["count", "3_1", "--n-range", "1..12"]);
    let nonzero: Vec<u64> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["n"] != 1 && r["classes"] != 0)
        .map(|r| r["n"].as_u64().unwrap())
        .collect();
    assert_eq!(nonzero, vec![2, 3, 6]);
    assert_eq!(v["rows"][5]["classes"], "infinite");
    assert_eq!(v["rows"][5]["b1"], 2);
}

#[test]
fn pipeline_figure_eight() {
    let v = json(&["pipeline", "4_1", "--n", "2"]);
    assert!(v["criterion"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["criterion_met"] == true));
    assert_eq!(v["deformation"]["certified"], true);
    assert_eq!(v["cover"]["equality"], true);
}

#[test]
fn pipeline_trefoil_rank_six_not_applicable() {
    let out = metarep(&["pipeline", "3_1", "--n", "6", "--format", "json"]);
    assert_eq!(out.status.code(), Some(4));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["stopped_at"], "enumeration");
}

#[test]
fn pipeline_torus_2_9() {
    let v = json(&["pipeline", "torus:2,9", "--n", "3"]);
    assert!(v["criterion"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["h1"] == 2));
}

#[test]
fn exit_codes() {
    assert_eq!(
        metarep(&["count", "not_a_knot", "--n", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        metarep(&["count", "torus:2,4", "--n", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        metarep(&["cover", "4_1", "--n", "3", "--cap", "4"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        metarep(&["cohomology", "3_1", "--n", "6"]).status.code(),
        Some(4)
    );
    assert_eq!(
        metarep(&["reps", "3_1", "--n", "2", "--format", "csv"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn deterministic_output() {
    let args = ["deform", "4_1", "--n", "2", "--format", "json"];
    assert_eq!(metarep(&args).stdout, metarep(&args).stdout);
    let csv = String::from_utf8(metarep(&["deform", "4_1", "--n", "2", "--format", "csv"]).stdout)
        .unwrap();
    // header plus 5 steps of 20 probe words
    assert_eq!(csv.lines().count(), 101);
}

#[test]
fn emitted_reps_round_trip() {
    let p = knot_by_name("4_1").unwrap();
    let v = json(&["reps", "4_1", "--n", "3"]);
    let classes = v["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 5);
    for c in classes {
        let rep: Representation<CycNum> = serde_json::from_value(c["rep"].clone()).unwrap();
        rep.check_relators(&p).unwrap();
        assert_eq!(serde_json::to_value(&rep).unwrap(), c["rep"]);
    }
}

#[test]
fn knot_spec_forms() {
    let name = json(&["count", "3_1", "--n", "3"]);
    for spec in [
        "torus:2,3",
        "braid:2:s1 s1 s1",
        "pd:[[1,5,2,4],[3,1,4,6],[5,3,6,2]]",
    ] {
        let v = json(&["count", spec, "--n", "3"]);
        assert_eq!(v["rows"], name["rows"], "{spec}");
    }
}

#[test]
fn twisted_alexander_unit() {
    let v = json(&["twisted-alex", "4_1", "--n", "2"]);
    let unit = v["factorization_unit"].as_str().unwrap();
    assert!(
        unit.starts_with("(1)") || unit.starts_with("(-1)"),
        "{unit}"
    );
}
