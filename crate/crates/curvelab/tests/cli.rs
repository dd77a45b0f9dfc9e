use std::path::Path;
use std::process::{Command, Output};

fn curvelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvelab")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("lab.toml");
    std::fs::write(&cfg, "surface = \"1,1\"\nweight_bound = 1\n").unwrap();
    let cfg = cfg.to_str().unwrap();

    let from_file = curvelab(&["enumerate", "--config", cfg]);
    assert!(from_file.status.success(), "{}", stderr(&from_file));
    assert_eq!(stdout(&from_file).lines().count(), 3);

    let overridden = curvelab(&["enumerate", "--config", cfg, "--weight-bound", "2"]);
    assert!(overridden.status.success());
    assert_eq!(stdout(&overridden).lines().count(), 6);
}

#[test]
fn unknown_config_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "wieght_bound = 3\n").unwrap();
    let out = curvelab(&["enumerate", "--surface", "1,1", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bad.toml"), "{}", stderr(&out));
}

#[test]
fn unsupported_surface_is_an_error() {
    let out = curvelab(&["enumerate", "--surface", "3,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error") || stderr(&out).contains("error"));
}

#[test]
fn stored_balls_answer_distance_queries() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap();
    let ball = curvelab(&["ball", "--surface", "0,5", "--kind", "pants", "--base", "ab,cd", "--radius", "2", "--out", out_dir]);
    assert!(ball.status.success(), "{}", stderr(&ball));
    let digest = stdout(&ball).lines().find_map(|l| l.strip_prefix("digest ")).unwrap().to_string();
    assert!(Path::new(out_dir).join(format!("{digest}.json")).exists());

    let args = ["distance", "--surface", "0,5", "--from", "ab,cd", "--to", "bc,ad", "--snapshot", &digest, "--out", out_dir];
    let fresh = curvelab(&["distance", "--surface", "0,5", "--from", "ab,cd", "--to", "bc,ad", "--radius", "2"]);
    let loaded = curvelab(&args);
    assert!(loaded.status.success(), "{}", stderr(&loaded));
    assert_eq!(stdout(&loaded), stdout(&fresh));

    let path = Path::new(out_dir).join(format!("{digest}.json"));
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replacen("\"depth\": 1", "\"depth\": 2", 1)).unwrap();
    let corrupt = curvelab(&args);
    assert_eq!(corrupt.status.code(), Some(2));
    assert!(stderr(&corrupt).contains(&digest), "{}", stderr(&corrupt));
}

#[test]
fn projection_and_estimate_print_results() {
    let proj = curvelab(&["project", "--surface", "0,5", "--curve", "bc", "--boundary", "ab"]);
    assert!(proj.status.success(), "{}", stderr(&proj));
    assert!(stdout(&proj).contains("bounded by ab"));

    let est = curvelab(&["estimate", "--surface", "0,5", "--from", "ab,cd", "--to", "bc,ad", "--threshold", "1"]);
    assert!(est.status.success(), "{}", stderr(&est));
    assert!(stdout(&est).lines().last().unwrap().starts_with("sum "));
}

#[test]
fn verify_writes_report_files_and_exit_status() {
    let dir = tempfile::tempdir().unwrap();
    let out = curvelab(&["verify", "farey", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(dir.path().join("farey.json").exists());
    assert!(dir.path().join("farey.txt").exists());

    let wrong = curvelab(&["verify", "fibers", "--surface", "1,1"]);
    assert_eq!(wrong.status.code(), Some(2));
}
