use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn mdual(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mdual")).args(args).output().expect("runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

#[test]
fn validate_space() {
    let o = mdual(&["validate", &fixture("s1.space.json")]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["kind"], "space");
    assert_eq!(v["points"], 2);
}

#[test]
fn non_distributive_lattice_fails() {
    let o = mdual(&["validate", &fixture("m3.lattice.json")]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["valid"], false);
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{ not json").unwrap();
    assert_eq!(code(&mdual(&["validate", p.to_str().unwrap()])), 2);
    std::fs::write(&p, r#"{"version": 7, "points": [], "opens": [[]], "relation": []}"#).unwrap();
    assert_eq!(code(&mdual(&["validate", p.to_str().unwrap()])), 2);
    assert_eq!(code(&mdual(&["omega", &fixture("chain3-id.frame.json")])), 2);
}

#[test]
fn points_of_chain() {
    let o = mdual(&["points", &fixture("chain3-id.frame.json"), "--mode", "relspq_c"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["points"].as_array().unwrap().len(), 2);
    let o = mdual(&["points", &fixture("chain3-id.frame.json"), "--mode", "relsp", "--trace-pruning"]);
    assert!(json(&o)["trace"].is_array());
}

#[test]
fn spatial_and_sober() {
    let o = mdual(&["check", "spatial", &fixture("chain3-id.frame.json"), "--mode", "relspq_c"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["isomorphism"], true);
    let o = mdual(&["check", "sober", &fixture("doubled-point.space.json"), "--mode", "relspq"]);
    assert_eq!(code(&o), 1);
    let o = mdual(&["check", "sober", &fixture("s1.space.json"), "--mode", "relspq"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn other_checks() {
    let f = fixture("chain3-top.frame.json");
    let s = fixture("s1.space.json");
    assert_eq!(code(&mdual(&["check", "triangles", &f, "--mode", "relspq"])), 0);
    assert_eq!(code(&mdual(&["check", "adjunction", &f, &s, "--mode", "relspq"])), 0);
    assert_eq!(code(&mdual(&["check", "adjunction", &f, &s, "--mode", "relspq", "--sequential"])), 0);
    assert_eq!(code(&mdual(&["check", "duality", &f, &s, "--mode", "relspq"])), 0);
    assert_eq!(code(&mdual(&["check", "correspondence", &fixture("chain4-reflexive.frame.json"), "--mode", "relspq_c"])), 0);
    assert_eq!(code(&mdual(&["check", "correspondence", &f])), 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["points", &fixture("chain4-reflexive.frame.json"), "--mode", "relspq"];
    let a = mdual(&args);
    let b = mdual(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn emitted_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let frame = dir.path().join("omega.frame.json");
    let space = dir.path().join("points.space.json");
    let o = mdual(&["omega", &fixture("s1.space.json"), "--emit", frame.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&mdual(&["validate", frame.to_str().unwrap()])), 0);
    let o = mdual(&["points", frame.to_str().unwrap(), "--mode", "relspq", "--emit", space.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&mdual(&["validate", space.to_str().unwrap()])), 0);
    // s1 is sober, so the point space has as many points and opens as s1.
    let v = json(&mdual(&["validate", space.to_str().unwrap()]));
    assert_eq!((v["points"].as_u64(), v["opens"].as_u64()), (Some(2), Some(3)));
}

#[test]
fn modelcheck() {
    let (s, v) = (fixture("s1.space.json"), fixture("s1.valuation.json"));
    let o = mdual(&["modelcheck", &s, "--valuation", &v, "--formula", "dia p", "--point", "x"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["holds"], true);
    let o = mdual(&["modelcheck", &s, "--valuation", &v, "--formula", "dia p -> p", "--point", "x"]);
    assert_eq!(code(&o), 1);
    assert_eq!(code(&mdual(&["modelcheck", &s, "--valuation", &v, "--formula", "p -> p", "--no-imp"])), 2);
    assert_eq!(code(&mdual(&["modelcheck", &s, "--valuation", &v, "--formula", "p &"])), 2);
    assert_eq!(code(&mdual(&["modelcheck", &s, "--valuation", &v, "--formula", "r"])), 2);
}

#[test]
fn bisim() {
    let o = mdual(&[
        "bisim",
        &fixture("s1.space.json"),
        &fixture("point-loop.space.json"),
        "--map",
        &fixture("s1-to-loop.map.json"),
        "--valuations",
        &fixture("s1-to-loop.valuations.json"),
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["pass"], true);
}

#[test]
fn idl() {
    let o = mdual(&["idl", &fixture("chain4-reflexive.frame.json")]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["modally_spectral"], true);
}

#[test]
fn sweep_bounds() {
    let o = mdual(&["sweep", "--max-lattice", "0", "--no-spaces"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["pass"], true);
    assert_eq!(code(&mdual(&["sweep", "--max-lattice", "9"])), 2);
    let o = mdual(&["sweep", "--max-lattice", "3", "--max-points", "2", "--modes", "relsp,relspq"]);
    assert_eq!(code(&o), 0);
}
