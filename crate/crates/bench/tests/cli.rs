use std::path::Path;
use std::process::{Command, Output};

use cosmeasure::generators::{generate, Family, GeneratorSpec};
use cosmeasure::testset_io::{load_manifest, save_case};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cosmeasure"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_prints_canonical_maximal_value() {
    let dir = tempfile::tempdir().unwrap();
    let file = save_case(
        &generate(&GeneratorSpec::new(Family::CanonicalMax, 3)).unwrap(),
        dir.path(),
    )
    .unwrap();
    let out = cli(&["solve", path(&file), "--methods", "vertex_enum"]);
    assert!(out.status.success());
    assert!(
        stdout(&out).contains("vertex_enum: cm = 0.57735"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn generate_writes_full_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = cli(&["generate", "--dims", "2,3,8", "--out", path(dir.path())]);
    assert!(out.status.success());
    assert_eq!(load_manifest(dir.path()).unwrap().len(), 3 * 21);
}

#[test]
fn bench_and_profile_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    assert!(cli(&["generate", "--dims", "2", "--out", path(&corpus)])
        .status
        .success());
    let csv_a = dir.path().join("a.csv");
    let csv_b = dir.path().join("b.csv");
    for out in [&csv_a, &csv_b] {
        let o = cli(&[
            "bench",
            "--corpus",
            path(&corpus),
            "--methods",
            "vertex_enum,random_lp",
            "--seed",
            "4",
            "--workers",
            "1",
            "--rotations",
            "1",
            "--out",
            path(out),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(
        std::fs::read(&csv_a).unwrap(),
        std::fs::read(&csv_b).unwrap()
    );
    let prof = dir.path().join("profile");
    let o = cli(&["profile", path(&csv_a), "--out", path(&prof)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["profile.csv", "profile.svg", "agreement.csv"] {
        assert!(prof.join(f).exists(), "{f}");
    }
}

#[test]
fn failed_case_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    assert!(cli(&["generate", "--dims", "2", "--out", path(dir.path())])
        .status
        .success());
    let entry = &load_manifest(dir.path()).unwrap()[0];
    std::fs::write(dir.path().join(&entry.path), "[]").unwrap();
    let out_csv = dir.path().join("r.csv");
    let o = cli(&[
        "bench",
        "--corpus",
        path(dir.path()),
        "--methods",
        "vertex_enum",
        "--out",
        path(&out_csv),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(out_csv.exists());
}

#[test]
fn usage_error_exits_with_two() {
    assert_eq!(cli(&["solve"]).status.code(), Some(2));
    assert_eq!(
        cli(&["bench", "--methods", "simplex"]).status.code(),
        Some(2)
    );
    assert_eq!(cli(&["frobnicate"]).status.code(), Some(2));
}
