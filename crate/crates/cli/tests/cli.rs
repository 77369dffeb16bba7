use std::process::{Command, Output};

use serde_json::Value;

fn svir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_svir")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = svir(&all);
    (serde_json::from_slice(&o.stdout).expect("valid json"), o.status.code().unwrap())
}

#[test]
fn bracket_with_central_term() {
    let o = svir(&["bracket", "L(2)", "L(-2)", "--c", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "4 L(0) + 1/2 C\n");
    let o = svir(&["bracket", "G(1/2)", "G(-1/2)", "--c", "3/2"]);
    assert_eq!(stdout(&o), "2 L(0)\n");
    let o = svir(&["bracket", "G(1)", "G(-1)", "--sector", "r"]);
    assert_eq!(stdout(&o), "2 L(0) + 1/4 C\n");
}

#[test]
fn act_normal_orders() {
    let o = svir(&["act", "G(3/2)G(1/2)w", "--a", "1", "--b", "2"]);
    assert_eq!(stdout(&o), "4 w\n");
    let (v, code) = json(&["act", "L(1)L(-1)w", "--a", "3", "--b", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["result"]["text"], "2 L_{0}w + 3 L_{-1}w");
    assert_eq!(v["results"]["result"]["expr"], "2 L(0)w + 3 L(-1)w");
}

#[test]
fn kernel_envelope() {
    let (v, code) = json(&["kernel", "--sector", "ns", "--a", "1", "--b", "1", "--c", "1/2", "--fdeg-max", "8"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["sector"], "ns");
    assert_eq!(v["psi"]["a"], "1");
    assert_eq!(v["psi"]["b"], "1");
    assert_eq!(v["c"], "1/2");
    assert_eq!(v["results"]["kernel_dimension"], 1);
    assert_eq!(v["results"]["verified"], true);
    assert_eq!(v["results"]["matches_expected"], true);
}

#[test]
fn ramond_b_zero_kernel_disagrees_with_claim() {
    let (v, code) = json(&["kernel", "--sector", "r", "--a", "1", "--b", "0", "--fdeg-max", "4"]);
    assert_eq!(code, 1);
    assert_eq!(v["results"]["kernel_dimension"], 4);
    assert_eq!(v["results"]["matches_expected"], false);
}

#[test]
fn findim_and_degenerate_probe() {
    let (v, code) = json(&["findim-verify", "--sector", "r", "--a", "1", "--b", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["invariant_subspaces"], serde_json::json!(["span{u}"]));
    let o = svir(&["degenerate-probe", "--sector", "r", "--a", "1", "--b", "0", "--fdeg-max", "2", "--budget", "300"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("is_whittaker: true"));
}

#[test]
fn simplicity_ns() {
    let o = svir(&["simplicity", "--fdeg-max", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: consistent-with-simple"));
}

#[test]
fn selfcheck_exit_codes() {
    let quick = ["selfcheck", "--index-bound", "4", "--fdeg-max", "4"];
    let o = svir(&[&quick[..], &["--b", "0"]].concat());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    // the signed-degree kill rule fails once b != 0
    let o = svir(&[&quick[..], &["--b", "1"]].concat());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL kill rule (signed degree)"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["bracket", "L(1)"][..],
        &["act", "G(1/2)w", "--sector", "r"],
        &["kernel", "--a", "x"],
        &["kernel", "--fdeg-max", "-5"],
        &["simplicity", "--a", "0", "--b", "0"],
        &["degenerate-probe", "--sector", "ns"],
        &["frobnicate"],
    ] {
        let o = svir(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn output_is_byte_deterministic() {
    let args = ["kernel", "--sector", "r", "--a", "2", "--b", "-1/3", "--fdeg-max", "6", "--format", "json"];
    assert_eq!(svir(&args).stdout, svir(&args).stdout);
    let args = ["selfcheck", "--index-bound", "3", "--fdeg-max", "4", "--seed", "9", "--format", "json"];
    assert_eq!(svir(&args).stdout, svir(&args).stdout);
}
