//! End-to-end checks of the `pooltest` binary: subcommand plumbing, file
//! formats on disk, and the documented exit codes (0 ok, 1 infeasible
//! parameters, 2 malformed input).

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn pooltest(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pooltest"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn write_example_matrix(path: &Path) {
    fs::write(
        path,
        "GTMAT v1 m=3 n=6 kind=raw seed=none\n101010\n010101\n011011\n",
    )
    .unwrap();
}

#[test]
fn design_verify_decode_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("design.gtmat");
    let run = pooltest(&[
        "design", "--design", "ks", "--n", "9", "--k", "1", "--p", "1.0", "--out",
        out.to_str().unwrap(),
    ]);
    assert!(run.status.success(), "{run:?}");
    let info = stdout(&run);
    assert!(info.contains("\"nprime\":3"), "{info}");
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("GTMAT v1 m=9 n=9 kind=ks(3,2,"), "{text}");

    let run = pooltest(&[
        "verify", "--matrix", out.to_str().unwrap(), "--k", "1", "--e", "0",
    ]);
    assert!(run.status.success());
    assert!(stdout(&run).contains("\"holds\":true"), "{}", stdout(&run));

    // decode the worked example
    let example = dir.path().join("example.gtmat");
    write_example_matrix(&example);
    let run = pooltest(&[
        "decode", "--matrix", example.to_str().unwrap(), "--y", "010", "--e", "0",
    ]);
    assert!(run.status.success());
    assert_eq!(stdout(&run).trim(), "supp=4");
    let run = pooltest(&[
        "decode", "--matrix", example.to_str().unwrap(), "--y", "010", "--e", "1",
    ]);
    assert_eq!(stdout(&run).trim(), "supp=1,2,4,6");
}

#[test]
fn verify_reports_one_based_witness() {
    let dir = tempfile::tempdir().unwrap();
    let example = dir.path().join("example.gtmat");
    write_example_matrix(&example);
    let run = pooltest(&[
        "verify", "--matrix", example.to_str().unwrap(), "--k", "1", "--e", "0",
    ]);
    assert!(run.status.success());
    let report: serde_json::Value = serde_json::from_str(stdout(&run).trim()).unwrap();
    assert_eq!(report["holds"], serde_json::json!(false));
    assert_eq!(report["witness"]["set"], serde_json::json!([2]));
    assert_eq!(report["witness"]["index"], serde_json::json!(4));
}

#[test]
fn simulate_is_reproducible_and_verbose() {
    let run = || {
        pooltest(&[
            "simulate", "--design", "bernoulli", "--n", "60", "--k", "2", "--p", "0.9",
            "--seed", "11",
        ])
    };
    let (a, b) = (run(), run());
    assert!(a.status.success(), "{a:?}");
    let ja: serde_json::Value = serde_json::from_str(stdout(&a).trim()).unwrap();
    let jb: serde_json::Value = serde_json::from_str(stdout(&b).trim()).unwrap();
    for key in ["exact", "false_pos", "false_neg", "truth", "candidates", "outcome"] {
        assert_eq!(ja[key], jb[key], "field {key} differs between reruns");
    }
    assert_eq!(ja["truth"].as_array().unwrap().len(), 2);
}

#[test]
fn sweep_csv_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("a.csv");
    let out_b = dir.path().join("b.csv");
    for out in [&out_a, &out_b] {
        let run = pooltest(&[
            "sweep", "--design", "bernoulli", "--n", "40,60", "--k", "2", "--p", "0.8,1.0",
            "--trials", "40", "--seed", "5", "--out", out.to_str().unwrap(),
        ]);
        assert!(run.status.success(), "{run:?}");
    }
    let (a, b) = (fs::read(&out_a).unwrap(), fs::read(&out_b).unwrap());
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with(
        "design,n,k,m,p,e,trials,success_rate,mean_fp,mean_fn,bound_prop2,bound_pf\n"
    ));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn bounds_subcommands_emit_json() {
    let run = pooltest(&[
        "bounds", "dilution", "--q", "0.08", "--m", "10000", "--n", "1", "--p", "0.5",
        "--delta", "0.1",
    ]);
    assert!(run.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&run).trim()).unwrap();
    assert!((v["value"].as_f64().unwrap() - 0.4065696597405991).abs() < 1e-12);

    let run = pooltest(&[
        "bounds", "design-failure", "--n", "1", "--k", "1", "--q", "0.5", "--m", "40",
        "--e", "5", "--gamma", "0.27",
    ]);
    assert!(run.status.success());
    let lines: Vec<String> = stdout(&run).lines().map(str::to_string).collect();
    assert_eq!(lines.len(), 2, "expected the tail bound and the gamma form");

    let run = pooltest(&["bounds", "ks-margin", "--n", "9", "--k", "1", "--p", "1.0"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&run).trim()).unwrap();
    assert_eq!(v["guaranteed"], serde_json::json!(true));
}

#[test]
fn exit_code_one_for_infeasible_parameters() {
    let run = pooltest(&[
        "design", "--design", "bernoulli", "--n", "100", "--k", "2", "--p", "0.1",
        "--out", "/dev/null",
    ]);
    assert_eq!(run.status.code(), Some(1), "{run:?}");

    let run = pooltest(&[
        "design", "--design", "ks", "--n", "10", "--k", "2", "--p", "0.01",
        "--out", "/dev/null",
    ]);
    assert_eq!(run.status.code(), Some(1), "{run:?}");
}

#[test]
fn exit_code_two_for_malformed_input() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.gtmat");
    fs::write(&bad, "GTMAT v1 m=3 n=6 kind=raw seed=none\n101010\n0101\n011011\n").unwrap();
    let run = pooltest(&["verify", "--matrix", bad.to_str().unwrap(), "--k", "1", "--e", "0"]);
    assert_eq!(run.status.code(), Some(2), "{run:?}");

    let missing = dir.path().join("nope.gtmat");
    let run = pooltest(&["verify", "--matrix", missing.to_str().unwrap(), "--k", "1", "--e", "0"]);
    assert_eq!(run.status.code(), Some(2), "{run:?}");

    let example = dir.path().join("example.gtmat");
    write_example_matrix(&example);
    let run = pooltest(&[
        "decode", "--matrix", example.to_str().unwrap(), "--y", "01x", "--e", "0",
    ]);
    assert_eq!(run.status.code(), Some(2), "{run:?}");
}
