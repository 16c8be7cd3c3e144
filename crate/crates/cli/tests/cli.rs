//! End-to-end tests of the `facering` binary: the documented exit-code
//! contract (0 success, 1 failed check with witness, 2 bad input), the
//! text output of the worked examples, and byte-level determinism of the
//! JSON reports.

use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).expect("write test input");
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_facering"))
        .args(args)
        .output()
        .expect("run facering")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

const TWO_POINTS: &str = r#"{"vertices": ["x", "y"], "facets": [["x"], ["y"]]}"#;

const HOLLOW_TRIANGLE: &str =
    r#"{"vertices": ["a", "b", "c"], "facets": [["a","b"], ["b","c"], ["a","c"]]}"#;

const TWO_EDGES: &str =
    r#"{"vertices": ["1","2","3","4"], "facets": [["1","2"], ["3","4"]]}"#;

const RP2: &str = r#"{
  "vertices": ["1","2","3","4","5","6"],
  "facets": [["1","2","3"],["1","2","6"],["1","3","5"],["1","4","5"],["1","4","6"],
             ["2","3","4"],["2","4","5"],["2","5","6"],["3","4","6"],["3","5","6"]]
}"#;

/// Fan of the complex of two disjoint points under the degree embedding:
/// one ray per vertex.
const TWO_POINT_FAN: &str = r#"{"ambient_dim": 3, "cones": [[[1,0,1]], [[0,1,1]]]}"#;

#[test]
fn local_cohomology_of_two_disjoint_points_in_degree_zero() {
    let dir = TempDir::new().unwrap();
    let fan = write(&dir, "fan.json", TWO_POINT_FAN);

    // Ring coordinates: embedded automatically.
    let out = run(        &["lch", "--fan", fan.to_str().unwrap(), "--degree", "0,0", "--i", "1"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), "1\n");

    // Fan coordinates: used as given, same answer.
    let out = run(        &["lch", "--fan", fan.to_str().unwrap(), "--degree", "0,0,0", "--i", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1\n");

    // The complex route agrees with the fan route.
    let complex = write(&dir, "pts.json", TWO_POINTS);
    let out = run(        &["lch", "--complex", complex.to_str().unwrap(), "--degree", "0,0", "--i", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1\n");
}

#[test]
fn cm_test_depends_on_the_field_for_a_projective_plane() {
    let dir = TempDir::new().unwrap();
    let complex = write(&dir, "rp2.json", RP2);

    let out = run(&["cm-test", "--complex", complex.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "true\n");

    let out = run(        &["cm-test", "--complex", complex.to_str().unwrap(), "--field", "gf:2"]);
    assert_eq!(out.status.code(), Some(1), "failed check exits 1");
    let text = stdout(&out);
    assert!(text.starts_with("false\n"), "got: {text}");
    assert!(text.contains("witness"), "witness must be printed: {text}");
}

#[test]
fn cm_witness_names_the_cone_and_degree_in_json() {
    let dir = TempDir::new().unwrap();
    let complex = write(&dir, "edges.json", TWO_EDGES);
    let out = run(        &["cm-test", "--complex", complex.to_str().unwrap(), "--output", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["holds"], serde_json::json!(false));
    let w = &v["witnesses"][0];
    assert_eq!(w["cone"], serde_json::json!("cone{}"));
    assert_eq!(w["degree"], serde_json::json!(0));
    assert_eq!(w["dim"], serde_json::json!(1));
}

#[test]
fn buchsbaum_but_not_cohen_macaulay() {
    let dir = TempDir::new().unwrap();
    let complex = write(&dir, "edges.json", TWO_EDGES);
    let out = run(&["buchsbaum-test", "--complex", complex.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "true\n");
}

#[test]
fn buchsbaum_test_rejects_a_fan_without_a_complex() {
    let dir = TempDir::new().unwrap();
    let fan = write(&dir, "fan.json", TWO_POINT_FAN);
    let out = run(&["buchsbaum-test", "--fan", fan.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "input error exits 2");
}

#[test]
fn betti_of_a_projective_plane_in_both_characteristics() {
    let dir = TempDir::new().unwrap();
    let complex = write(&dir, "rp2.json", RP2);

    let out = run(&["betti", "--complex", complex.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0\n", "rationally acyclic");

    let out = run(        &["betti", "--complex", complex.to_str().unwrap(), "--field", "gf:2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1:1 2:1\n");
}

#[test]
fn link_of_a_vertex_in_the_hollow_triangle() {
    let dir = TempDir::new().unwrap();
    let complex = write(&dir, "tri.json", HOLLOW_TRIANGLE);
    let out = run(        &["link", "--complex", complex.to_str().unwrap(), "--face", "a"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{b} {c}\n");
}

#[test]
fn stanley_consistency_on_two_disjoint_edges() {
    let dir = TempDir::new().unwrap();
    let complex = write(&dir, "edges.json", TWO_EDGES);
    let out = run(&["stanley-check", "--complex", complex.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "order_complex_cm=false ring_cm=false consistent=true\n");
}

#[test]
fn ext_and_flasque_on_small_modules() {
    let dir = TempDir::new().unwrap();
    let constant = write(
        &dir,
        "const.json",
        r#"{"poset": {"elements": ["a","b"], "hasse": [["a","b"]]},
            "stalks": {"a": 1, "b": 1},
            "edges": {"a<b": [[1]]}}"#,
    );
    let out = run(&["ext", "--module", constant.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0:1\n");

    let out = run(&["flasque", "--module", constant.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "true\n");

    let skyscraper = write(
        &dir,
        "sky.json",
        r#"{"poset": {"elements": ["a","b"], "hasse": [["a","b"]]},
            "stalks": {"a": 1}}"#,
    );
    let out = run(&["flasque", "--module", skyscraper.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("false\n"));

    let out = run(        &["flasque", "--module", skyscraper.to_str().unwrap(), "--exhaustive"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_small_corpus_passes() {
    let out = run(&["verify", "--corpus", "small"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("ok:"), "got: {text}");
    assert!(text.contains("0 mismatches"), "got: {text}");
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let complex = write(&dir, "rp2.json", RP2);
    let args = [
        "lch-table",
        "--complex",
        complex.to_str().unwrap(),
        "--output",
        "json",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn embedding_is_recorded_in_json_output() {
    let dir = TempDir::new().unwrap();
    let complex = write(&dir, "pts.json", TWO_POINTS);
    let out = run(        &[
            "lch",
            "--complex",
            complex.to_str().unwrap(),
            "--degree",
            "0,0",
            "--output",
            "json",
        ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["degree"], serde_json::json!([0, 0]));
    assert_eq!(v["embedded_degree"], serde_json::json!(["0", "0", "0"]));
    assert_eq!(v["local_cohomology"], serde_json::json!([[1, 1]]));
}

#[test]
fn bad_inputs_exit_two() {
    let dir = TempDir::new().unwrap();

    let truncated = write(&dir, "bad.json", r#"{"vertices": "#);
    let out = run(&["betti", "--complex", truncated.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let complex = write(&dir, "pts.json", TWO_POINTS);
    let out = run(        &["lch", "--complex", complex.to_str().unwrap(), "--degree", "0,0,0,0"]);
    assert_eq!(out.status.code(), Some(2), "degree length mismatch");

    let out = run(        &["betti", "--complex", complex.to_str().unwrap(), "--field", "gf:6"]);
    assert_eq!(out.status.code(), Some(2), "composite modulus");

    let out = run(&["verify", "--corpus", "huge"]);
    assert_eq!(out.status.code(), Some(2), "unknown corpus");

    let overlapping = write(
        &dir,
        "overlap.json",
        r#"{"ambient_dim": 2, "cones": [[[1,0],[1,1]], [[1,0],[0,1]]]}"#,
    );
    let out = run(&["lch", "--fan", overlapping.to_str().unwrap(), "--degree", "0,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("not a common face"),
        "the offending pair must be reported: {}",
        stderr(&out)
    );
}
