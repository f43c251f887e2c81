use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{}", env!("CARGO_MANIFEST_DIR"), name)
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_syzlab"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
    )
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut with_format = args.to_vec();
    with_format.push("--format");
    with_format.push("json");
    let (code, stdout, stderr) = run(&with_format);
    let v = serde_json::from_str(&stdout)
        .unwrap_or_else(|e| panic!("bad JSON ({}): {}\nstderr: {}", e, stdout, stderr));
    (code, v)
}

#[test]
fn classify_reports_hypersurface_data() {
    let r1 = fixture("r1.json");
    let (code, v) = run_json(&["ring", "classify", "--ring", &r1]);
    assert_eq!(code, 0);
    let c = &v["classification"];
    assert_eq!(c["dim"], 1);
    assert_eq!(c["multiplicity"], 2);
    assert_eq!(c["embedding_dim"], 2);
    assert_eq!(c["gorenstein"], true);
    assert_eq!(c["minimal_multiplicity"], true);
    assert_eq!(c["regular"], false);
    assert_eq!(c["cm_type"], 1);
}

#[test]
fn ext_dims_alternate_over_the_hypersurface() {
    let r1 = fixture("r1.json");
    let (code, v) = run_json(&[
        "ext", "--ring", &r1, "--M", "(x)", "--N", "(x)", "--range", "1..8",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["dims"], serde_json::json!([0, 1, 0, 1, 0, 1, 0, 1]));
    assert_eq!(v["max_zero_run"], 1);

    let (code, v) = run_json(&[
        "tor", "--ring", &r1, "--M", "(x)", "--N", "(x)", "--range", "1..8",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["dims"], serde_json::json!([1, 0, 1, 0, 1, 0, 1, 0]));
}

#[test]
fn omega_scan_refutes_gorenstein_for_the_short_ring() {
    let r2 = fixture("r2.json");
    let (code, v) = run_json(&[
        "check", "gorenstein-omega-scan", "--ring", &r2, "--nmax", "6",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["found_at"], serde_json::json!([]));
    assert_eq!(v["holds"], false);
    assert_eq!(v["gorenstein"], false);
    assert_eq!(v["agreement"], true);
}

#[test]
fn betti_table_doubles_for_k_over_the_short_ring() {
    let r2 = fixture("r2.json");
    let (code, v) = run_json(&["betti", "--ring", &r2, "--module", "k", "--depth", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["totals"], serde_json::json!([1, 2, 4, 8, 16]));
    assert_eq!(v["entries"]["3,3"], 8);
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let r1 = fixture("r1.json");
    let args = [
        "resolve", "--ring", &r1, "--module", "(x, y^2)", "--length", "4", "--format", "json",
    ];
    let (c1, out1, _) = run(&args);
    let (c2, out2, _) = run(&args);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert_eq!(out1, out2);
}

#[test]
fn emitted_presentation_reparses_to_the_same_module() {
    let r1 = fixture("r1.json");
    let (code, v) = run_json(&["syzygy", "--ring", &r1, "--module", "(x)", "--index", "1"]);
    assert_eq!(code, 0);
    let emitted = serde_json::to_string(&v["module"]).unwrap();

    let direct = ["betti", "--ring", &r1, "--module", "syz(1, (x))", "--depth", "3", "--format", "json"];
    let reparsed = ["betti", "--ring", &r1, "--module", &emitted, "--depth", "3", "--format", "json"];
    let (c1, out1, _) = run(&direct);
    let (c2, out2, _) = run(&reparsed);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert_eq!(out1, out2);
}

#[test]
fn ring_description_round_trips_through_classify() {
    let r4 = fixture("r4.json");
    let (code, v) = run_json(&["ring", "classify", "--ring", &r4]);
    assert_eq!(code, 0);
    let emitted = serde_json::to_string(&v["ring"]).unwrap();
    let (code2, v2) = run_json(&["ring", "classify", "--ring", &emitted]);
    assert_eq!(code2, 0);
    assert_eq!(v, v2);
}

#[test]
fn input_errors_exit_two() {
    let r1 = fixture("r1.json");
    let (code, _, stderr) = run(&["ext", "--ring", &r1, "--M", "(x", "--N", "k"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("error:"), "stderr: {}", stderr);

    let (code, _, _) = run(&["betti", "--ring", "no-such-file.json", "--module", "k"]);
    assert_eq!(code, 2);

    let bad_field = r#"{"field": {"characteristic": 6}, "vars": ["x"], "ideal": []}"#;
    let (code, _, _) = run(&["ring", "classify", "--ring", bad_field]);
    assert_eq!(code, 2);

    let (code, _, _) = run(&["corpus", "run", "--criterion", "99"]);
    assert_eq!(code, 2);
}

#[test]
fn refused_hypotheses_exit_one() {
    let r3 = fixture("r3.json");
    let (code, _, stderr) = run(&[
        "check", "regularity", "--ring", &r3, "--M", "k", "--N", "k", "--bound", "4",
    ]);
    assert_eq!(code, 1);
    assert!(stderr.contains("hypothesis not met"), "stderr: {}", stderr);

    let non_cm = r#"{"field": {"characteristic": 32003}, "vars": ["x", "y"], "ideal": ["x^2", "x*y"]}"#;
    let (code, _, _) = run(&["canonical", "--ring", non_cm]);
    assert_eq!(code, 1);
}

#[test]
fn corrupted_golden_exits_three_with_a_diff() {
    let golden = tmp("golden-c2.json");
    let golden_str = golden.to_str().unwrap();
    let (code, _, _) = run(&[
        "corpus", "run", "--criterion", "2", "--format", "json", "--out", golden_str,
    ]);
    assert_eq!(code, 0);

    let (code, stdout, _) = run(&["corpus", "run", "--criterion", "2", "--golden", golden_str]);
    assert_eq!(code, 0);
    assert!(stdout.contains("golden  : match"), "stdout: {}", stdout);

    let corrupted = std::fs::read_to_string(&golden)
        .unwrap()
        .replace("\"pass\": true", "\"pass\": false");
    let bad = tmp("golden-c2-bad.json");
    std::fs::write(&bad, corrupted).unwrap();
    let (code, stdout, _) = run(&[
        "corpus", "run", "--criterion", "2", "--golden", bad.to_str().unwrap(),
    ]);
    assert_eq!(code, 3);
    assert!(stdout.contains("MISMATCH"), "stdout: {}", stdout);
    assert!(stdout.contains("- "), "stdout: {}", stdout);
    assert!(stdout.contains("+ "), "stdout: {}", stdout);
}

#[test]
fn corpus_seed_reruns_deterministically() {
    let args = ["corpus", "run", "--criterion", "10", "--seed", "77", "--format", "json"];
    let (c1, out1, _) = run(&args);
    let (c2, out2, _) = run(&args);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    let mut v1: Value = serde_json::from_str(&out1).unwrap();
    let mut v2: Value = serde_json::from_str(&out2).unwrap();
    v1["criteria"][0]["seconds"] = Value::Null;
    v2["criteria"][0]["seconds"] = Value::Null;
    assert_eq!(v1, v2);
    assert_eq!(v1["criteria"][0]["pass"], true);
    assert_eq!(v1["seed"], 77);
}

#[test]
fn degree_cap_env_narrows_reported_windows() {
    let r1 = fixture("r1.json");
    let out = Command::new(env!("CARGO_BIN_EXE_syzlab"))
        .args(["hilbert", "--ring", &r1, "--format", "json"])
        .env("SYZLAB_DEGREE_CAP", "3")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let values = v["values"].as_array().unwrap();
    assert_eq!(values.len(), 4);
    assert_eq!(values.last().unwrap()[0], 3);
}

#[test]
fn help_documents_every_subcommand() {
    let (code, stdout, _) = run(&["--help"]);
    assert_eq!(code, 0);
    for name in [
        "ring", "resolve", "betti", "syzygy", "hilbert", "socle", "ext", "tor", "hom",
        "trace", "canonical", "check", "corpus",
    ] {
        assert!(stdout.contains(name), "missing {} in help", name);
    }
    let (code, stdout, _) = run(&["check", "--help"]);
    assert_eq!(code, 0);
    for name in [
        "socle-lemma", "takahashi", "no-summand", "gorenstein-omega-scan", "regularity",
        "gorenstein-ext", "gorenstein-omega", "gdim",
    ] {
        assert!(stdout.contains(name), "missing check {} in help", name);
    }
}

#[test]
fn rational_coefficients_work_end_to_end() {
    let ring = r#"{"field": {"characteristic": 0}, "vars": ["x", "y"], "ideal": ["x*y"]}"#;
    let (code, v) = run_json(&[
        "ext", "--ring", ring, "--M", "(x)", "--N", "(x)", "--range", "1..4",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["dims"], serde_json::json!([0, 1, 0, 1]));
}
