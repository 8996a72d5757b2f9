use std::process::{Command, Output};

fn lzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lzeta")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn zeta_at_two() {
    let o = lzeta(&["zeta", "--s", "2,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("1.644934066848"), "{}", stdout(&o));
    let o = lzeta(&["zeta", "--s", "2,0", "--format", "json", "--N", "200", "--bern", "12"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["cutoff"], 200);
    assert!(v["error_estimate"].as_f64().unwrap() < 1e-12);
}

#[test]
fn turan_scan_to_1000() {
    let o = lzeta(&["scan", "--turan", "--limit", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("turan: first_violation=none"), "{text}");
    assert!(!text.contains("polya"));
}

#[test]
fn verify_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = lzeta(&["verify", "--all", "--X", "1e4", "--quiet", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stderr.is_empty());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    let cases = v.as_array().unwrap();
    assert!(cases.len() >= 6);
    let names: Vec<&str> = cases.iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(names.contains(&"zeta_identity[s=0.75+0i,X=10000]"));
}

#[test]
fn single_case_and_points() {
    let o = lzeta(&["verify", "--case", "eq-gt1", "--s", "2,0", "--s", "3", "--X", "1e5", "--quiet"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert!(v[1]["residual"].as_f64().unwrap() < 1e-6);
}

#[test]
fn tight_tolerance_fails_gated_case() {
    let o = lzeta(&["verify", "--case", "eq-gt1", "--s", "2", "--X", "1e3", "--tolerance", "1e-9", "--quiet"]);
    // The tail bound, not the floor, sets the tolerance here, so this passes.
    assert_eq!(o.status.code(), Some(0));
    let o = lzeta(&["verify", "--case", "lemma-an", "--X", "1e4", "--quiet"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn config_file_with_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# sums run\ncommand=sums\nX=1e3\nstride=500\n").unwrap();
    let o = lzeta(&["--config", cfg.to_str().unwrap(), "--quiet"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(rows[0], "x,F_half,F_one,L");
    assert!(rows.last().unwrap().starts_with("1000,"));

    let o = lzeta(&["sums", "--X", "2000", "--config", cfg.to_str().unwrap(), "--quiet"]);
    assert!(stdout(&o).lines().last().unwrap().starts_with("2000,"));
}

#[test]
fn sieve_csv_is_thread_and_segment_independent() {
    let a = lzeta(&["sieve", "--hi", "2e5", "--stride", "997", "--threads", "1"]);
    let b = lzeta(&["sieve", "--hi", "2e5", "--stride", "997", "--threads", "4", "--segment-size", "1000"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,lambda,P,T"));
    assert_eq!(lines.next(), Some("1,1,1,1.0"));
    assert_eq!(lines.next().unwrap().split(',').next(), Some("998"));
}

#[test]
fn other_subcommands() {
    let o = lzeta(&["xi", "--n-max", "1e4", "--per-decade", "2", "--monotone-to", "1e4", "--quiet"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("n,xi,residual\n2,0.7427869302187"));

    let o = lzeta(&["integrate", "--kind", "one", "--s", "2", "--X", "1e4"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["re"].as_f64().unwrap() - (2.0 / 3.0) * (1.0 - 1e-6)).abs() < 1e-12);

    let o = lzeta(&["sigma-c", "--kind", "one", "--grid", "0.9:1.1:0.04", "--X", "1e5", "--quiet"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("sigma,X,re,im,tail_estimate\n"));
}

#[test]
fn exit_codes() {
    // usage
    for args in [
        &["zeta"][..],
        &["verify", "--X", "1e3"],
        &["sums", "--X", "1.5"],
        &["scan", "--format", "csv", "--limit", "10"],
        &["frobnicate"],
        &["sieve", "--threads", "0"],
    ] {
        assert_eq!(lzeta(args).status.code(), Some(2), "{args:?}");
    }
    // domain
    for args in [
        &["zeta", "--s", "1,0"][..],
        &["zeta", "--s", "-2,0"],
        &["sums", "--X", "0"],
        &["verify", "--case", "eq-gt1", "--s", "0.75", "--X", "100"],
        &["integrate", "--s", "0.5", "--X", "100"],
    ] {
        let o = lzeta(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    }
    assert_eq!(lzeta(&["--help"]).status.code(), Some(0));
}
