use std::process::Command as Process;

use serde_json::Value;

use dynkin_stab_cli::{run, Command, Format, JobSpec, EXIT_BUDGET, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("dynkin-stab").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = call(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn stabilize_tensor_example() {
    let v = json(&[
        "stabilize-tensor", "--pair", "A1,A1", "--lambda", "[1],[1]", "--mu", "[1],[1]", "--nu", "[1],[1]",
    ]);
    assert_eq!(v["schema"], "dynkin-stab/1");
    assert_eq!(v["command"], "stabilize-tensor");
    assert_eq!(v["value"], 2);
    assert_eq!(v["K"], 3);
}

#[test]
fn oracle_and_path_tensor_agree() {
    let (code, oracle, _) = call(&["oracle-tensor", "--type", "B3", "--lambda", "101", "--mu", "101", "--format", "tsv"]);
    assert_eq!(code, EXIT_OK);
    let (code, counted, _) = call(&["tensor", "--type", "B3", "--lambda", "101", "--mu", "101", "--format", "tsv"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(oracle.lines().count(), 12);
    assert_eq!(oracle, counted);
}

#[test]
fn diagram_info_and_dimension() {
    let v = json(&["diagram-info", "--diagram", "E10"]);
    assert_eq!(v["det"], -1);
    assert_eq!(v["delta"], -1);
    let v = json(&["oracle-dim", "--type", "E8", "--lambda", "00000001"]);
    assert_eq!(v["dimension"], 248);
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["--help"]).0, EXIT_OK);
    assert_eq!(call(&["--version"]).0, EXIT_OK);
    assert_eq!(call(&[]).0, EXIT_USAGE);
    assert_eq!(call(&["no-such-command"]).0, EXIT_USAGE);
    assert_eq!(call(&["depth", "--pair", "A1,A1", "--gamma", "[1"]).0, EXIT_DOMAIN);
    assert_eq!(call(&["depth", "--pair", "A1,A1", "--gamma", "[1],[]"]).0, EXIT_DOMAIN);
    let (code, _, err) = call(&["tensor", "--type", "E8", "--lambda", "10000001", "--mu", "10000001", "--budget", "5"]);
    assert_eq!(code, EXIT_BUDGET, "{err}");
}

#[test]
fn reproduce_matches_golden_tables() {
    let v = json(&["reproduce-b-tables"]);
    assert_eq!(v["rows_stable"], true);
}

#[test]
fn tsv_is_deterministic() {
    let args = ["interval-up", "--pair", "A1,A1", "--gamma", "[],[]", "--s", "2", "--format", "tsv", "--jobs", "3"];
    let first = call(&args).1;
    for _ in 0..3 {
        assert_eq!(call(&args).1, first);
    }
    assert!(!first.is_empty());
}

#[test]
fn job_specs_round_trip_through_json() {
    let job = JobSpec {
        command: Command::Star {
            pair: "A1,A1".into(),
            lambda: "[1],[1]".into(),
            mu: "[1],[]".into(),
            depth: 2,
        },
        format: Format::Tsv,
        budget: 1000,
        jobs: Some(2),
    };
    let text = serde_json::to_string(&job).unwrap();
    assert!(text.contains("\"command\":\"star\""));
    assert_eq!(serde_json::from_str::<JobSpec>(&text).unwrap(), job);
}

#[test]
fn dot_output_is_written() {
    let path = std::env::temp_dir().join(format!("dynkin-stab-{}.dot", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, _, err) = call(&["tensor", "--type", "A2", "--lambda", "10", "--mu", "01", "--dot", p]);
    assert_eq!(code, EXIT_OK, "{err}");
    let dot = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(dot.starts_with("digraph crystal {"));
    assert_eq!(dot.matches("label=").count(), 3 + 2);
}

#[test]
fn binary_runs() {
    let out = Process::new(env!("CARGO_BIN_EXE_dynkin-stab"))
        .args(["pair-check", "--pair", "B3(mark=3),A1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["extensible_pair"], false);
    let out = Process::new(env!("CARGO_BIN_EXE_dynkin-stab")).arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
}
