use std::io::Write;
use std::process::{Command, Output, Stdio};

use flowpart::graph::{generate, Family};
use flowpart::io::parse_graph;
use serde_json::Value;

fn flowpart(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_flowpart"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// `gen <family>` piped into `<args>`; returns the payload.
fn pipe(family: &[&str], args: &[&str]) -> Value {
    let mut gen_args = vec!["gen"];
    gen_args.extend_from_slice(family);
    let g = flowpart(&gen_args, "");
    assert!(g.status.success());
    let o = flowpart(args, &stdout(&g));
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    v["payload"].clone()
}

#[test]
fn star_has_three_flows() {
    assert_eq!(pipe(&["flow-star", "3"], &["flows"])["count"], 3);
}

#[test]
fn split_k5_is_weakly_mni() {
    assert_eq!(pipe(&["flow-split-k5"], &["weakly-mni"])["verdict"], true);
}

#[test]
fn lehman_on_circulant_file() {
    let dir = std::env::temp_dir().join(format!("flowpart-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("circulant-8-3.txt");
    std::fs::write(&path, stdout(&flowpart(&["gen", "circulant", "8", "3"], ""))).unwrap();
    let o = flowpart(&["lehman", "--clutter", path.to_str().unwrap()], "");
    let p = &serde_json::from_str::<Value>(&stdout(&o)).unwrap()["payload"];
    assert_eq!((p["n"].clone(), p["c"].clone(), p["b"].clone()), (8.into(), 3.into(), 3.into()));
    assert_eq!(p["excess"], 2);
    assert_eq!(p["pass"], true);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn false_verdicts_exit_zero() {
    let p = pipe(&["flow-star", "3"], &["ideal"]);
    assert_eq!(p["ideal"], false);
    assert_eq!(p["fractional_vertex"]["0"], "1/2");
    assert_eq!(p["fractional_vertex"]["3"], "0/1");
    assert_eq!(pipe(&["flow-star", "3"], &["partitionable"])["partitionable"], false);
}

#[test]
fn solve_reports_value_and_bound() {
    let p = pipe(&["flow-circuit", "5"], &["solve"]);
    assert_eq!(p["value"], "3/1");
    assert_eq!(p["lp_value"], "5/2");
    assert_eq!(pipe(&["flow-circuit", "5"], &["lp"])["value"], "5/2");
}

#[test]
fn detectors_and_pipelines() {
    let p = pipe(&["flow-star", "5"], &["detect", "star"]);
    assert_eq!(p["witness"]["k"], 5);
    assert_eq!(p["witness"]["family"], "odd_flow_star");
    assert_eq!(pipe(&["octagon"], &["detect", "circuit"])["found"], true);
    assert_eq!(pipe(&["flow-circuit", "3"], &["detect", "circuit"])["found"], false);
    let f = pipe(&["flow-split-k5"], &["fatcore"]);
    assert_eq!(f["screen"]["core"], "tau_k5");
    assert_eq!(f["lehman"]["excess"], 3);
    assert_eq!(pipe(&["flow-star", "3"], &["terminal-paths"])["clutter"]["members"].as_array().unwrap().len(), 3);
    assert_eq!(pipe(&["flow-star", "3"], &["tree"])["ideal"], false);
}

#[test]
fn minor_ops_apply() {
    let p = pipe(&["flow-star", "3"], &["minor", "--ops", "d5,c0"]);
    assert_eq!(p["operations"][0]["op"], "delete");
    assert_eq!(p["graph"]["edges"].as_array().unwrap().len(), 4);
}

#[test]
fn generated_graphs_round_trip() {
    for (args, f) in [
        (vec!["gen", "flow-star", "7"], Family::FlowStar(7)),
        (vec!["gen", "flow-circuit", "5"], Family::FlowCircuit(5)),
        (vec!["gen", "flow-split-k5"], Family::FlowSplitK5),
        (vec!["gen", "octagon"], Family::ChordedOctagon),
    ] {
        let text = stdout(&flowpart(&args, ""));
        assert_eq!(parse_graph(&text).unwrap(), generate(f).unwrap());
    }
}

#[test]
fn output_is_deterministic() {
    let g = stdout(&flowpart(&["gen", "flow-split-k5"], ""));
    let a = stdout(&flowpart(&["weakly-mni"], &g));
    let b = stdout(&flowpart(&["weakly-mni"], &g));
    assert_eq!(a, b);
}

#[test]
fn exit_codes() {
    assert_eq!(flowpart(&["flows"], "0 1 x\n").status.code(), Some(2));
    assert_eq!(flowpart(&["frobnicate"], "").status.code(), Some(2));
    let octagon = stdout(&flowpart(&["gen", "octagon"], ""));
    assert_eq!(flowpart(&["detect", "circuit", "--max-minors", "2"], &octagon).status.code(), Some(3));
    assert_eq!(flowpart(&["tree"], &octagon).status.code(), Some(2));
}

#[test]
fn pretty_and_known_clutters() {
    let o = flowpart(&["lehman", "--known", "fano", "--pretty"], "");
    assert!(stdout(&o).contains("excess: 3"));
    let o = flowpart(&["blocker", "--known", "dpp-3"], "");
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["payload"]["blocker"]["members"].as_array().unwrap().len(), 4);
}

#[test]
fn planar_experiment_runs() {
    let o = flowpart(&["experiment", "planar", "--count", "20", "--seed", "3"], "");
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["payload"]["count"], 20);
}
