//! End-to-end tests of the `semicurve` binary: subcommand output,
//! format switches, exit codes, and thread-count independence.

use std::path::Path;
use std::process::{Command, Output};

fn semicurve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semicurve"))
        .args(args)
        .env_remove("SEMICURVE_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn write_file(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn semigroup_info_reports_the_dual_weight() {
    let out = semicurve(&["semigroup", "info", "--gens", "3,13,14"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"genus\": 8"));
    assert!(text.contains("\"dual_weight\": 16"));
    assert!(text.contains("\"weight\": 12"));
    assert!(text.contains("\"dual_genus\": 4"));
}

#[test]
fn semigroup_info_csv_has_versioned_header() {
    let out = semicurve(&["semigroup", "info", "--gens", "3,13,14", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# format: semicurve.weights.v1"));
    assert_eq!(
        lines.next(),
        Some("generators,g,c,W_S,W_K,symmetric,hyperelliptic,bielliptic,kappa,tech_hyp")
    );
    let row = lines.next().unwrap();
    assert!(row.starts_with("3 13 14,8,12,12,16,"), "row = {row}");
}

#[test]
fn semigroup_sources_are_mutually_exclusive() {
    let out = semicurve(&[
        "semigroup", "info", "--gens", "3,4", "--gaps", "1,2,5",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tree_count_matches_the_known_census() {
    let out = semicurve(&["tree", "count", "--max-genus", "8"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        value["counts"],
        serde_json::json!([1, 1, 2, 4, 7, 12, 23, 39, 67])
    );
    assert_eq!(value["total"], serde_json::json!(156));
}

#[test]
fn tree_dump_lists_every_semigroup_of_the_genus() {
    let out = semicurve(&["tree", "dump", "--genus", "4", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    // 7 semigroups of genus 4 plus the two header lines.
    assert_eq!(text.lines().count(), 9);
    assert!(text.contains("2 9,4,8,"));
}

#[test]
fn tableau_render_draws_both_diagrams() {
    let out = semicurve(&["tableau", "render", "--gens", "4,10,11,17"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("S: genus 8, weight 10"));
    assert!(text.contains("K: genus 6, weight 12"));
    assert!(text.contains("#####"));
    assert!(text.contains("#######"));
    assert!(text.contains("\"rows\":[5,2,1,1,1]"));
    assert!(text.contains("\"dual_rows\":[7,4,1]"));
}

#[test]
fn verify_submaximal_is_clean_at_genus_11() {
    let out = semicurve(&["verify", "submaximal", "--genus", "11"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"violated\": 0"));
    assert!(text.contains("\"checked\""));
}

#[test]
fn fail_on_violation_sets_the_exit_code() {
    // Genus 2: both semigroups reach the maximal dual weight, so the
    // uniqueness scan records one violation.
    let out = semicurve(&[
        "verify", "max-weight", "--genus", "2", "--fail-on-violation",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("\"violated\": 1"));

    // Without the flag the same scan exits 0.
    let out = semicurve(&["verify", "max-weight", "--genus", "2"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_output_is_byte_identical_across_thread_counts() {
    let args = ["verify", "conjecture", "--kappa", "1", "--max-genus", "9"];
    let one = semicurve(&[&args[..], &["--threads", "1"]].concat());
    let four = semicurve(&[&args[..], &["--threads", "4"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);

    // The environment variable is an equivalent way to set the pool.
    let env = Command::new(env!("CARGO_BIN_EXE_semicurve"))
        .args(args)
        .env("SEMICURVE_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(one.stdout, env.stdout);
}

#[test]
fn scan_reports_write_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let out = semicurve(&[
        "verify", "leaf-law", "--max-genus", "8",
        "--format", "csv", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# format: semicurve.scan.v1"));
    assert!(text.contains("genus,checked,violated,note"));
}

#[test]
fn curve_analyze_reads_json_and_toml_files() {
    let dir = tempfile::tempdir().unwrap();
    let json = write_file(
        dir.path(),
        "cusp.json",
        r#"{"f": [[1], [0,0,0,0,1], [0,0,0,0,0,0,1,1]]}"#,
    );
    let toml = write_file(
        dir.path(),
        "cusp.toml",
        "f = [[1], [0, 0, 0, 0, 1], [0, 0, 0, 0, 0, 0, 1, 1]]\n",
    );
    let from_json = semicurve(&["curve", "analyze", &json]);
    let from_toml = semicurve(&["curve", "analyze", &toml]);
    assert!(from_json.status.success());
    assert_eq!(from_json.stdout, from_toml.stdout);
    let text = stdout(&from_json);
    assert!(text.contains("\"conductor\": 16"));
    assert!(text.contains("\"bielliptic\": true"));
    assert!(text.contains("\"verdict\": \"birational\""));
}

#[test]
fn curve_gonality_certifies_the_tetragonal_example() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(
        dir.path(),
        "cusp.json",
        r#"{"f": [[1], [0,0,0,0,1], [0,0,0,0,0,0,1,1]]}"#,
    );
    let out = semicurve(&["curve", "gonality", &file]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"lower\": 4"));
    assert!(text.contains("\"upper\": 4"));
    assert!(text.contains("\"exact\": true"));
}

#[test]
fn curve_bielliptic_finds_the_double_cover() {
    // Monomial nonsymmetric bielliptic curve of genus 9: u = t² has
    // u², u³ among the coordinate ratios, and the quadric hull is a
    // degree-2 cover of its image.
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(
        dir.path(),
        "biell.json",
        r#"{"f": [[1], [0,0,0,0,1], [0,0,0,0,0,0,1],
                 [0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,1],
                 [0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,1]]}"#,
    );
    let out = semicurve(&["curve", "bielliptic", &file, "--u", "t^2,1"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("\"verdict\": \"double-cover\""));
    assert!(text.contains("\"map_degree\": 2"));
    assert!(text.contains("\"dimension\": 3"));

    // The same construction is found without naming u.
    let auto = semicurve(&["curve", "bielliptic", &file]);
    assert!(auto.status.success());
    assert!(stdout(&auto).contains("\"verdict\": \"double-cover\""));
}

#[test]
fn malformed_curve_files_exit_2_with_a_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_file(dir.path(), "bad.json", "not json at all");
    let out = semicurve(&["curve", "analyze", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());

    let missing = dir.path().join("nope.json");
    let out = semicurve(&["curve", "analyze", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // Floating-point coefficients are rejected, not rounded.
    let float = write_file(dir.path(), "float.json", r#"{"f": [[1], [0, 0.5]]}"#);
    let out = semicurve(&["curve", "analyze", &float]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("floating-point"));
}

#[test]
fn non_birational_parametrizations_are_rejected() {
    // (1+t³ : t²) squared and cubed: every coordinate is a function of
    // u = t²/(1+t³), a degree-3 map, so the tuple is a triple cover of
    // its image and the analysis refuses it.
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(
        dir.path(),
        "cover.json",
        r#"{"f": [[1,0,0,3,0,0,3,0,0,1], [0,0,0,0,1,0,0,1], [0,0,0,0,0,0,1]]}"#,
    );
    let out = semicurve(&["curve", "analyze", &file]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degree 3"));
}

#[test]
fn unknown_subcommands_exit_2() {
    let out = semicurve(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}
