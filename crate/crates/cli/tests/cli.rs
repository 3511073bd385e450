use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lattice-centers"))
        .args(args)
        .env_remove("LC_ATLAS_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = run(&all);
    let v = serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    (v, o.status.code().unwrap())
}

#[test]
fn centers_of_euler_triangle() {
    let (v, code) = json(&["centers", "0,0", "9,3", "0,6"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    for (k, x, y) in [("circumcenter", "4", "3"), ("centroid", "3", "3"), ("orthocenter", "1", "3")] {
        assert_eq!(v[k]["x"], x);
        assert_eq!(v[k]["y"], y);
        assert_eq!(v[k]["lattice"], true);
    }
}

#[test]
fn centers_of_unit_right_triangle() {
    let (v, _) = json(&["centers", "0,0", "1,0", "0,1"]);
    assert_eq!(v["orthocenter"]["x"], "0");
    assert_eq!(v["orthocenter"]["lattice"], true);
    assert_eq!(v["centroid"]["x"], "1/3");
    assert_eq!(v["centroid"]["lattice"], false);
}

#[test]
fn centers_reports_lattice_incenter() {
    let (v, _) = json(&["centers", "0,0", "14,2", "8,8"]);
    assert_eq!(v["incenter"]["x"], "8");
    assert_eq!(v["incenter"]["y"], "4");
    assert_eq!(v["incenter"]["inradius_squared"], "8");
    assert_eq!(v["incenter"]["inradius_rational"], false);
    let human = stdout(&run(&["centers", "0,0", "14,2", "8,8"]));
    assert!(human.contains("I = (8,4)"), "{human}");
}

#[test]
fn degenerate_input_is_rejected() {
    let o = run(&["centers", "0,0", "1,1", "2,2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("degenerate"));
    assert_eq!(run(&["centers", "0,0", "1,1"]).status.code(), Some(1));
    assert_eq!(run(&["centers", "0,0", "x", "1,2"]).status.code(), Some(1));
}

#[test]
fn negative_coordinates_parse() {
    let (v, code) = json(&["classify", "-2,4", "0,0", "2,3"]);
    assert_eq!(code, 0);
    assert_eq!(v["shape"], "acute");
    assert_eq!(v["perimeter"], "4");
    let (v, _) = json(&["length", "-3,0", "3,9"]);
    assert_eq!(v["lattice_length"], "3");
}

#[test]
fn construct_impossible_prints_certificates() {
    let (v, code) = json(&["construct", "--center", "H", "--shape", "acute", "--perimeter", "7"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "proven_impossible");
    let rules: Vec<&str> = v["certificate"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["rule"].as_str().unwrap())
        .collect();
    assert!(rules.contains(&"OneOneM") && rules.contains(&"GcdLemma"), "{rules:?}");
}

#[test]
fn construct_witnesses() {
    let (v, code) = json(&["construct", "--center", "FGH", "--shape", "acute", "--perimeter", "12"]);
    assert_eq!(code, 0);
    assert_eq!(v["witness_vertices"], serde_json::json!(["(0,0)", "(6,0)", "(3,9)"]));
    let (v, code) = json(&["construct", "--center", "G", "--shape", "right", "--perimeter", "9"]);
    assert_eq!(code, 0);
    assert_eq!(v["witness_vertices"], serde_json::json!(["(0,0)", "(3,0)", "(0,3)"]));
}

#[test]
fn construct_outside_any_family() {
    let o = run(&["construct", "--center", "I", "--shape", "acute", "--perimeter", "16"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["construct", "--center", "H", "--shape", "acute", "--perimeter", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("perimeter"), "{}", stdout(&o));
}

#[test]
fn angles_tables() {
    let (v, _) = json(&["angles", "1", "4", "5"]);
    assert_eq!(v["solutions"].as_array().unwrap().len(), 0);
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    let (v, _) = json(&["angles", "2", "3", "5"]);
    assert_eq!(v["solutions"], serde_json::json!([[1, 2, 1]]));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    assert_eq!(rows[2]["versus_pi"], "equal");
    assert_eq!(rows[8]["value_over_pi"], "0.897584");
    let (v, _) = json(&["angles", "1", "2", "3", "--no-halving"]);
    assert_eq!(v["solutions"], serde_json::json!([[1, 1, 1]]));
}

#[test]
fn table_small() {
    let o = run(&["table", "--lmax", "12", "--box", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.contains("Match")).count(), 15);
}

#[test]
fn atlas_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.json");
    let p = path.to_str().unwrap();
    let o = run(&["atlas", "--box", "8", "--lmax", "12", "--conditions", "G,H", "--shapes", "acute", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["entries"].as_array().unwrap().len(), 20);
    let o = run(&["atlas", "--check", p]);
    assert_eq!(o.status.code(), Some(0));

    let text = std::fs::read_to_string(&path).unwrap().replace("\"(0,0)\"", "\"(0,1)\"");
    std::fs::write(&path, text).unwrap();
    assert_eq!(run(&["atlas", "--check", p]).status.code(), Some(1));
}

#[test]
fn atlas_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_lattice-centers"))
        .args(["atlas", "--box", "6", "--lmax", "9", "--shards", "2"])
        .env("LC_ATLAS_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("atlas.json").exists());
    assert!(dir.path().join("checkpoint.ndjson").exists());
}

#[test]
fn incenter_scan_emits_rows() {
    let o = run(&["incenter-scan", "--box", "20", "--lmax", "20", "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with('#'));
    assert_eq!(lines.next(), Some("shape,perimeter,witness_vertices,inradius_squared"));
    let rows: Vec<&str> = lines.collect();
    assert!(!rows.is_empty());
    assert!(rows.contains(&"right,8,\"(0,0) (0,3) (4,0)\",1"), "{rows:?}");
}

#[test]
fn figures() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["euler", "orthic", "model", "incircle-345", "incircle"] {
        let path = dir.path().join(format!("{name}.svg"));
        let o = run(&["figure", name, "--out", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        let svg = std::fs::read_to_string(&path).unwrap();
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    }
    let euler = std::fs::read_to_string(dir.path().join("euler.svg")).unwrap();
    for label in [">F<", ">G<", ">H<"] {
        assert!(euler.contains(label));
    }
    // circumradius 5 at 40 pixels per unit
    assert!(euler.contains(r#"r="200.00""#));
    let inc = std::fs::read_to_string(dir.path().join("incircle.svg")).unwrap();
    // inradius 2 sqrt 2 at 40 pixels per unit, truncated
    assert!(inc.contains(r#"r="113.13""#), "{inc}");
    assert!(inc.contains(">I<"));
}

#[test]
fn props_scan() {
    let (v, code) = json(&["props", "--max", "200"]);
    assert_eq!(code, 0);
    assert_eq!(v["mismatches"], 0);
    assert_eq!(v["rows"].as_array().unwrap().len(), 198);
}

#[test]
fn formats_are_uniform() {
    for args in [
        vec!["length", "0,0", "4,6"],
        vec!["classify", "0,0", "4,0", "4,3"],
        vec!["angles", "1", "4", "5"],
        vec!["props", "--max", "20"],
    ] {
        for f in ["human", "json", "csv"] {
            let mut a = args.clone();
            a.extend(["--format", f]);
            let o = run(&a);
            assert_eq!(o.status.code(), Some(0), "{a:?}");
            assert!(!o.stdout.is_empty(), "{a:?}");
        }
    }
}
