use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pbc-dbscan"))
        .args(args)
        .output()
        .expect("failed to launch pbc-dbscan")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn labels_to_stdout_summary_to_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "p.csv", "0.0\n0.05\n0.10\n0.50\n");
    let out = run(&["cluster", "-i", &input, "--eps", "0.06", "-m", "3"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "0\n0\n0\n-1\n");
    assert!(stderr(&out).contains("clusters=1 noise=1 padded=0"));
}

#[test]
fn seam_points_join_under_periodic_flag() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "p.csv", "0.02\n0.98\n0.5\n");
    let open = run(&["cluster", "-i", &input, "--eps", "0.05", "-m", "2"]);
    let wrapped = run(&[
        "cluster",
        "-i",
        &input,
        "--eps",
        "0.05",
        "-m",
        "2",
        "--dim",
        "periodic:0:1",
    ]);
    assert_eq!(String::from_utf8_lossy(&open.stdout), "-1\n-1\n-1\n");
    assert_eq!(String::from_utf8_lossy(&wrapped.stdout), "0\n0\n-1\n");
}

#[test]
fn dimension_flag_count_must_match_data() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "p.csv", "0.1,0.2\n0.3,0.4\n");
    let out = run(&["cluster", "-i", &input, "--eps", "0.1", "--dim", "open"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("dimension mismatch"));
}

#[test]
fn ragged_rows_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "p.csv", "0.1,0.2\n0.3\n");
    let out = run(&["cluster", "-i", &input, "--eps", "0.1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("row 2: expected 2 columns, found 1"));
}

#[test]
fn points_outside_periodic_range_are_wrapped() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "p.csv", "1.01\n-0.01\n");
    let out = run(&[
        "cluster",
        "-i",
        &input,
        "--eps",
        "0.05",
        "-m",
        "2",
        "--all-periodic",
        "0:1",
    ]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "0\n0\n");
}

#[test]
fn missing_input_file() {
    let out = run(&["cluster", "-i", "/nonexistent/points.csv", "--eps", "0.1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generate_lists_presets() {
    let out = run(&["generate", "--list"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    for name in ["fig1", "fig2", "fig3", "fig3-single", "fig4"] {
        assert!(
            text.lines().any(|l| l.starts_with(&format!("{name}\t"))),
            "{name}"
        );
    }
}

#[test]
fn unknown_preset_lists_choices() {
    let out = run(&["generate", "--preset", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("fig3-single"));
}

#[test]
fn generate_from_blob_file() {
    let dir = tempfile::tempdir().unwrap();
    let blobs = write(
        dir.path(),
        "b.json",
        r#"{"blobs": [{"center": [0.0, 0.5], "sigma": [0.03, 0.03], "count": 50}]}"#,
    );
    let out = run(&[
        "generate",
        "--blobs",
        &blobs,
        "--seed",
        "3",
        "--all-periodic",
        "0:1",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().count(), 50);
    for line in text.lines() {
        for v in line.split(',') {
            let x: f64 = v.parse().unwrap();
            assert!((0.0..1.0).contains(&x));
        }
    }
}

#[test]
fn verify_detects_deliberate_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("d.csv");
    let data = data.to_str().unwrap();
    assert!(run(&["generate", "--preset", "fig2", "-o", data])
        .status
        .success());
    let ok = run(&["verify", "-i", data, "--eps", "0.05", "--all-periodic", "0:1"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = run(&[
        "verify",
        "-i",
        data,
        "--eps",
        "0.05",
        "--oracle-eps",
        "0.02",
        "--all-periodic",
        "0:1",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stdout).contains("equivalent: false"));
}

#[test]
fn verify_sweep() {
    let out = run(&["verify", "--sweep", "20", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("sweep: 20/20 equivalent"));
}

#[test]
fn bench_single_size_has_no_exponent() {
    let out = run(&["bench", "--sizes", "2000", "-r", "1"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("n,seconds,padded_fraction\n2000,"));
    assert!(stderr(&out).contains("fitted_exponent=none"));
}

#[test]
fn bench_rejects_unsorted_sizes() {
    let out = run(&["bench", "--sizes", "2000,1000"]);
    assert_eq!(out.status.code(), Some(2));
}
