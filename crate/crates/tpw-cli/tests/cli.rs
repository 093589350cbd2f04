//! End-to-end tests of the command-line interface: pipelines across the
//! text formats and the documented exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tpw"))
}

fn workdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tpw-cli-test-{}-{tag}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn pipeline_gen_tdecomp_construct_verify() {
    let dir = workdir("pipeline");
    let gr = dir.join("g.gr");
    let td = dir.join("g.td");
    let tp = dir.join("g.tp");

    let out = run(&[
        "gen",
        "random_ktree",
        "--n",
        "30",
        "--k",
        "2",
        "--seed",
        "7",
        "-o",
        path_str(&gr),
    ]);
    assert_eq!(code(&out), 0, "{out:?}");

    let out = run(&["tdecomp", "-g", path_str(&gr), "-o", path_str(&td)]);
    assert_eq!(code(&out), 0);

    let out = run(&[
        "construct",
        "-g",
        path_str(&gr),
        "-d",
        path_str(&td),
        "-o",
        path_str(&tp),
        "--trace",
    ]);
    assert_eq!(code(&out), 0);
    // trace lines are JSON objects with a case field
    let stderr = String::from_utf8_lossy(&out.stderr);
    let json_lines: Vec<&str> = stderr.lines().filter(|l| l.starts_with('{')).collect();
    assert!(!json_lines.is_empty(), "trace requested but absent");
    for line in &json_lines {
        assert!(line.contains("\"case\":"), "bad trace line: {line}");
    }

    let out = run(&["verify", "-g", path_str(&gr), "-p", path_str(&tp)]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok"));

    let out = run(&["verify", "-g", path_str(&gr), "-d", path_str(&td)]);
    assert_eq!(code(&out), 0);
}

#[test]
fn exact_solves_small_and_reports_partial() {
    let dir = workdir("exact");
    let gr = dir.join("c6.gr");
    assert_eq!(
        code(&run(&["gen", "cycle", "--n", "6", "-o", path_str(&gr)])),
        0
    );

    let out = run(&["exact", "-g", path_str(&gr)]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("exact width 2"));

    // zero budget cannot finish a clique on eight vertices: partial result
    let k8 = dir.join("k8.gr");
    assert_eq!(
        code(&run(&["gen", "clique", "--n", "8", "-o", path_str(&k8)])),
        0
    );
    let out = run(&["exact", "-g", path_str(&k8), "--budget-ms", "0"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("width >= 4"));
}

#[test]
fn violation_and_input_error_exit_codes() {
    let dir = workdir("codes");
    let gr = dir.join("c4.gr");
    assert_eq!(
        code(&run(&["gen", "cycle", "--n", "4", "-o", path_str(&gr)])),
        0
    );

    // all-singleton partition of a cycle: quotient cycle, exit 1
    let bad_tp = dir.join("bad.tp");
    std::fs::write(&bad_tp, "s tp 4 1 4\nb 1 1\nb 2 2\nb 3 3\nb 4 4\n").unwrap();
    let out = run(&["verify", "-g", path_str(&gr), "-p", path_str(&bad_tp)]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("quotient cycle"));

    // generator precondition violation: exit 2
    let out = run(&["gen", "lower_tw2", "--delta", "12"]);
    assert_eq!(code(&out), 2);

    // missing file: exit 2
    let out = run(&["exact", "-g", path_str(&dir.join("missing.gr"))]);
    assert_eq!(code(&out), 2);

    // capacity: exact width of an oversized graph without budget, exit 3
    let big = dir.join("p40.gr");
    assert_eq!(
        code(&run(&["gen", "path", "--n", "40", "-o", path_str(&big)])),
        0
    );
    let out = run(&["exact", "-g", path_str(&big)]);
    assert_eq!(code(&out), 3);
}

#[test]
fn audit_and_experiment_csv() {
    let dir = workdir("csv");
    let gr = dir.join("inst.gr");
    assert_eq!(
        code(&run(&[
            "gen",
            "lower_general",
            "--k",
            "2",
            "--delta",
            "7",
            "--n",
            "3",
            "-o",
            path_str(&gr)
        ])),
        0
    );
    let out = run(&["audit", "-g", path_str(&gr)]);
    assert_eq!(code(&out), 0);
    let stdout = String::from_utf8_lossy(&out.stdout);
    let mut lines = stdout.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("family,k,delta,n,vertices"));
    assert!(header.ends_with("sandwich_ok,theorem1_ok"));
    let row = lines.next().unwrap();
    assert!(row.starts_with("lower_general,2,7,3,10"));

    // small plan file: rows in order, reruns byte-identical
    let plan = dir.join("plan.json");
    std::fs::write(
        &plan,
        r#"{
            "budget_ms": 2,
            "instances": [
                {"family": "path", "params": {"n": 9}},
                {"family": "clique", "params": {"n": 6}},
                {"family": "random_ktree", "params": {"n": 12, "k": 2}, "seed": 5}
            ]
        }"#,
    )
    .unwrap();
    let csv1 = dir.join("out1.csv");
    let csv2 = dir.join("out2.csv");
    let out = run(&[
        "experiment",
        "--plan",
        path_str(&plan),
        "-o",
        path_str(&csv1),
    ]);
    assert_eq!(code(&out), 0, "{out:?}");
    let out = run(&[
        "experiment",
        "--plan",
        path_str(&plan),
        "-o",
        path_str(&csv2),
    ]);
    assert_eq!(code(&out), 0);
    let a = std::fs::read(&csv1).unwrap();
    let b = std::fs::read(&csv2).unwrap();
    assert_eq!(a, b, "experiment reruns must be byte-identical");
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().count(), 4);
    let clique_row = text.lines().find(|l| l.starts_with("clique")).unwrap();
    assert!(clique_row.contains(",3,exact,"), "row: {clique_row}");

    // plan with an invalid descriptor fails preflight with exit 2
    let bad_plan = dir.join("bad.json");
    std::fs::write(
        &bad_plan,
        r#"{"instances": [{"family": "lower_general", "params": {"k": 1, "delta": 7, "n": 9}}]}"#,
    )
    .unwrap();
    let out = run(&["experiment", "--plan", path_str(&bad_plan)]);
    assert_eq!(code(&out), 2);
}

#[test]
fn gen_formats() {
    let dir = workdir("fmt");
    let out = run(&["gen", "grid_h", "--n", "3", "--k", "2"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("p tpw 6"));
    assert!(text.contains("c meta family=grid_h"));
    assert!(text.contains("c label 1 (1,1)"));

    let dot = dir.join("g.dot");
    let out = run(&[
        "gen",
        "wheel",
        "--n",
        "5",
        "--format",
        "dot",
        "-o",
        path_str(&dot),
    ]);
    assert_eq!(code(&out), 0);
    let dot_text = std::fs::read_to_string(&dot).unwrap();
    assert!(dot_text.starts_with("graph g {"));
    assert!(dot_text.contains("label=\"hub\""));
}
