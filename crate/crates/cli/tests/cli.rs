use sha2::{Digest, Sha256};
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kinetic-spectra"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn sha(path: &Path) -> Vec<u8> {
    Sha256::digest(std::fs::read(path).unwrap()).to_vec()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn eigs_is_byte_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let out = run(&["eigs", "--s", "0.5", "--nmax", "3", "--lmax", "3", "--out", dir.path().to_str().unwrap()]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    for name in ["eigenvalues.csv", "eigenvalues.json"] {
        assert_eq!(sha(&a.path().join(name)), sha(&b.path().join(name)), "{name}");
    }
    let single = bin()
        .env("KINETIC_SPECTRA_THREADS", "1")
        .args(["eigs", "--s", "0.5", "--nmax", "3", "--lmax", "3"])
        .output()
        .unwrap();
    assert_eq!(single.stdout, std::fs::read(a.path().join("eigenvalues.csv")).unwrap());
}

#[test]
fn eigs_table_contents() {
    let out = run(&["eigs", "--s", "0.25", "--nmax", "2", "--lmax", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("n,l,m,lambda_L,lambda_B,lambda1,lambda2,lambda3,ratio\n"));
    let rows = csv_rows(&text);
    // every (n,l) with n,l <= 2, each repeated 2l+1 times
    assert_eq!(rows.len(), 3 * (1 + 3 + 5));
    for row in &rows {
        let (n, l): (u32, u32) = (row[0].parse().unwrap(), row[1].parse().unwrap());
        let lambda_b: f64 = row[4].parse().unwrap();
        let kernel = (n == 0 && l <= 1) || (n == 1 && l == 0);
        if kernel {
            assert!(lambda_b.abs() < 1e-10);
            assert!(row[8].is_empty());
        } else {
            assert!(lambda_b > 0.0);
            let ratio: f64 = row[8].parse().unwrap();
            let lambda_l: f64 = row[3].parse().unwrap();
            assert!((ratio - lambda_b / lambda_l.powf(0.25)).abs() < 1e-12 * ratio);
        }
    }
}

#[test]
fn invalid_arguments_exit_2() {
    assert_eq!(run(&["eigs", "--s", "1.5"]).status.code(), Some(2));
    assert_eq!(run(&["eigs", "--kernel", "gaussian"]).status.code(), Some(2));
    assert_eq!(run(&["eigs", "--tol", "1e-30"]).status.code(), Some(2));
    assert_eq!(run(&["evolve", "--times", "0,-1"]).status.code(), Some(2));
    assert_eq!(run(&["evolve", "--initial", "preset:nope"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let out = run(&["eigs", "--s", "0"]);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("\"error\":\"config\""), "{stderr}");
}

#[test]
fn unwritable_output_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, b"x").unwrap();
    let out = run(&["eigs", "--nmax", "1", "--lmax", "1", "--out", blocker.join("sub").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn invariants_are_flat() {
    let out = run(&["evolve", "--initial", "preset:invariants", "--times", "0,1,10"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 3);
    for row in &rows {
        assert_eq!(row[1], rows[0][1]);
        assert_eq!(row[2], "0.0000000000000000e0");
        assert_eq!(row[3], "0.0000000000000000e0");
    }
}

#[test]
fn landau_single_mode_decay() {
    let out = run(&["evolve", "--operator", "landau", "--initial", "preset:mode-0-2-1", "--times", "0,0.05,0.1"]);
    assert!(out.status.success());
    for row in csv_rows(&String::from_utf8(out.stdout).unwrap()) {
        let t: f64 = row[0].parse().unwrap();
        let d: f64 = row[3].parse().unwrap();
        let expected = 12.0 * (-24.0 * t).exp();
        assert!((d - expected).abs() < 1e-13 * expected, "t={t}: {d} vs {expected}");
    }
}

#[test]
fn evolve_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["evolve", "--times", "0.5", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    for name in ["trace.csv", "final_coefficients.csv", "trace.json"] {
        assert!(dir.path().join(name).exists(), "{name}");
    }
    // feeding the final state back in and evolving for 0 is a fixed point
    let again = tempfile::tempdir().unwrap();
    let initial = dir.path().join("final_coefficients.csv");
    let out = run(&[
        "evolve",
        "--times",
        "0",
        "--initial",
        initial.to_str().unwrap(),
        "--out",
        again.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(
        std::fs::read(&initial).unwrap(),
        std::fs::read(again.path().join("final_coefficients.csv")).unwrap()
    );
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"s": 0.75, "nmax": 1, "lmax": 1}"#).unwrap();
    let from_file = run(&["eigs", "--config", cfg.to_str().unwrap()]);
    assert!(from_file.status.success());
    assert_eq!(csv_rows(&String::from_utf8(from_file.stdout).unwrap()).len(), 2 * 4);
    let overridden = run(&["eigs", "--config", cfg.to_str().unwrap(), "--lmax", "0"]);
    assert_eq!(csv_rows(&String::from_utf8(overridden.stdout).unwrap()).len(), 2);

    std::fs::write(&cfg, r#"{"s": 0.75, "bogus": 1}"#).unwrap();
    assert_eq!(run(&["eigs", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn norms_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["norms", "--s", "0.5", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("norms.json")).unwrap()).unwrap();
    let d = v["dirichlet"].as_f64().unwrap();
    let hs = v["hs_norm"].as_f64().unwrap();
    let sphere = v["sphere_norm"].as_f64().unwrap();
    assert!(d > 0.0 && hs > 0.0 && sphere > 0.0);
    assert!((v["projected_ratio"].as_f64().unwrap() - d / (hs + sphere)).abs() < 1e-12);
}

#[test]
fn verify_passes_at_moderate_singularity() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["verify", "--s", "0.75", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("verification.json")).unwrap()).unwrap();
    assert_eq!(v["passed"], serde_json::Value::Bool(true));
}
