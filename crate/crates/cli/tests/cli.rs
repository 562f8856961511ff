// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const ORIENTATION: &str = "# bitstrings: leftmost character = coordinate 1";
const COUNTEREXAMPLE: &str = r#"{"dim":3,"gram":["010","101","010"],"set":["100","010","001","110"]}"#;
const PATH_BASIS: &str = r#"{"dim":3,"gram":["010","101","010"],"set":["100","010","001"]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_transvect"))
        .args(args)
        .env_remove("TRANSVECT_GROUP_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn classify_counterexample() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ce.json", COUNTEREXAMPLE);
    let o = run(&["classify", &f]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with(ORIENTATION));
    assert!(out.contains("claw_free=true"));
    assert!(out.contains("block_graph=false"));
    assert!(out.contains("conditions=(T,T,F,T)"));
}

#[test]
fn group_path_basis() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p.json", PATH_BASIS);
    let out = stdout(&run(&["group", &f]));
    assert!(out.contains("order=24"));
    assert!(out.contains("symmetric=k4"));
    let v: Value = serde_json::from_str(&stdout(&run(&["group", &f, "--json"]))).unwrap();
    assert_eq!(v["order"], 24);
    assert_eq!(v["certificate"]["coxeter_generators"].as_array().unwrap().len(), 3);
}

#[test]
fn group_cap_from_environment() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p.json", PATH_BASIS);
    let o = Command::new(env!("CARGO_BIN_EXE_transvect"))
        .args(["group", &f])
        .env("TRANSVECT_GROUP_CAP", "5")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("(capped)"));
    assert!(stdout(&o).contains("symmetric=undecided"));
}

#[test]
fn classify_json_round_trips() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ce.json", COUNTEREXAMPLE);
    let first = stdout(&run(&["classify", &f, "--json"]));
    let saved = write(&dir, "out.json", &first);
    let o = run(&["classify", &saved, "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let a: Value = serde_json::from_str(&first).unwrap();
    let b: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(a["classification"], b["classification"]);
    assert_eq!(a["instance"], b["instance"]);
    assert_eq!(b["reproduced"], true);

    // A tampered result is reported as a discrepancy.
    let mut tampered = a.clone();
    tampered["classification"]["block_graph"] = Value::Bool(true);
    let bad = write(&dir, "bad.json", &tampered.to_string());
    assert_eq!(run(&["classify", &bad]).status.code(), Some(1));
}

#[test]
fn mutate_move_class_and_replay() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ce.json", COUNTEREXAMPLE);
    let o = run(&["mutate", &f, "--mode", "free", "--alpha", "100", "--beta", "110", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["instance"]["set"], serde_json::json!(["100", "010", "001"]));

    let p = write(&dir, "p.json", r#"{"dim":3,"gram":["010","101","010"],"set":["110","011","001"]}"#);
    let class = stdout(&run(&["mutate", &p, "--class", "--json"]));
    let report: Value = serde_json::from_str(&class).unwrap();
    assert!(report["path_representative"].is_array());
    let trace = write(&dir, "trace.json", &class);
    let replayed: Value = serde_json::from_str(&stdout(&run(&["mutate", &p, "--replay", &trace, "--json"]))).unwrap();
    assert_eq!(replayed["path"], true);
    let mut got: Vec<String> = serde_json::from_value(replayed["instance"]["set"].clone()).unwrap();
    let mut want: Vec<String> = serde_json::from_value(report["path_representative"].clone()).unwrap();
    got.sort();
    want.sort();
    assert_eq!(got, want);

    // Independent mode refuses a move that breaks independence.
    let o = run(&["mutate", &f, "--alpha", "100", "--beta", "010"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn construct_extends_a_tree() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "t.json", r#"{"parents":[null,0,1,2,3],"names":["a","b","c","d","e"]}"#);
    let o = run(&["construct", "--tree", &t, "--vertex", "a", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["beta"], "0101");
    assert_eq!(v["instance"]["set"].as_array().unwrap().len(), 5);
    let ext = write(&dir, "ext.json", &stdout(&o));
    let c = stdout(&run(&["classify", &ext]));
    assert!(c.contains("claw_free_block_graph=true"));
    let g = stdout(&run(&["group", &ext]));
    assert!(g.contains("order=720"));

    let odd = write(&dir, "odd.json", r#"{"prufer":[1,1]}"#);
    assert_eq!(run(&["construct", "--tree", &odd, "--vertex", "v0"]).status.code(), Some(2));
}

#[test]
fn export_dot_is_well_formed() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ce.json", COUNTEREXAMPLE);
    let out = stdout(&run(&["export-dot", &f]));
    let body: Vec<&str> = out.lines().filter(|l| !l.starts_with("//")).collect();
    assert!(body[0].starts_with("graph "));
    assert_eq!(out.matches('{').count(), out.matches('}').count());
    let edges: Vec<(usize, usize)> = body
        .iter()
        .filter_map(|l| l.trim().strip_suffix(';')?.split_once(" -- "))
        .map(|(a, b)| (a.parse().unwrap(), b.parse().unwrap()))
        .collect();
    assert_eq!(edges, vec![(0, 1), (0, 3), (1, 2), (1, 3), (2, 3)]);
    assert_eq!(run(&["export-dot", &f, "--root-tree"]).status.code(), Some(2));
}

#[test]
fn verify_counterexample_suite() {
    let o = run(&["verify", "--suite", "counterexample"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with(ORIENTATION));
    assert!(out.contains("== counterexample(n=6) =="));
    let j: Value = serde_json::from_str(&stdout(&run(&["verify", "--suite", "graphs", "--max-vertices", "4", "--json"]))).unwrap();
    assert_eq!(j["passed"], true);
    assert_eq!(j["reports"][0]["instances_checked"], 1 + 1 + 2 + 8 + 64);
}

#[test]
fn usage_and_input_errors() {
    let dir = TempDir::new().unwrap();
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "/no/such/file"]).status.code(), Some(2));
    let bad = write(&dir, "bad.json", r#"{"dim":3,"gram":["010","001","010"],"set":["100"]}"#);
    let o = run(&["classify", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    let big = format!(
        r#"{{"dim":9,"gram":[{}],"set":["100000000"]}}"#,
        ["\"000000000\""; 9].join(",")
    );
    let big = write(&dir, "big.json", &big);
    assert_eq!(run(&["classify", &big]).status.code(), Some(0));
    assert_eq!(run(&["group", &big]).status.code(), Some(2));
    assert!(Path::new(&big).exists());
}

#[test]
fn verify_all_exits_cleanly() {
    let o = run(&["verify", "--suite", "all", "--max-dim", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("DISCREPANCY"));
}
