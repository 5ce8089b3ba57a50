use std::fs;
use std::time::Instant;

use cosmeasure::generators::{Family, GeneratorSpec};
use cosmeasure::solvers::Method;
use cosmeasure::testset_io::{build_corpus, load_manifest};
use cosmeasure_bench::{
    accuracy_profile, digit_grid, read_records_csv, run_benchmark, run_case, write_records_csv,
    AccuracyRecord, BenchPlan, LpIterations, CSV_HEADER,
};

fn small_corpus(dir: &std::path::Path) {
    let plan = vec![
        GeneratorSpec::new(Family::CanonicalMin, 3),
        GeneratorSpec::new(Family::MaxDeltaShift, 3).with_delta(1.0 / 6.0),
        GeneratorSpec::new(Family::RandomPss, 3)
            .with_seed(5)
            .with_instance(0),
    ];
    build_corpus(&plan, dir).unwrap();
}

fn csv(records: &[AccuracyRecord]) -> String {
    let mut buf = Vec::new();
    write_records_csv(records, &mut buf).unwrap();
    String::from_utf8(buf).unwrap()
}

#[test]
fn empty_record_list_gives_header_only() {
    assert_eq!(csv(&[]), format!("{}\n", CSV_HEADER.join(",")));
}

#[test]
fn records_are_sorted_and_complete() {
    let dir = tempfile::tempdir().unwrap();
    small_corpus(dir.path());
    let mut plan = BenchPlan::new(dir.path(), vec![Method::VertexEnum, Method::RandomLp]);
    plan.lp_iterations = LpIterations::Fixed(50);
    let out = run_benchmark(&plan).unwrap();
    assert!(out.failures.is_empty());
    assert_eq!(out.records.len(), 3 * 3 * 2);
    assert!(out
        .records
        .windows(2)
        .all(|w| (&w[0].case_id, w[0].method) < (&w[1].case_id, w[1].method)));
    for r in &out.records {
        assert!(r.completed);
        assert!(r.wall_ms.is_none());
        if r.family == "random_pss" {
            assert!(r.truth.is_none() && r.correct_digits.is_none());
        } else if r.method == Method::VertexEnum {
            assert!(r.correct_digits.unwrap() > 12.0);
        }
    }
}

#[test]
fn worker_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    small_corpus(dir.path());
    let mut plan = BenchPlan::new(dir.path(), Method::ALL.to_vec());
    plan.lp_iterations = LpIterations::Fixed(30);
    let one = csv(&run_benchmark(&plan).unwrap().records);
    plan.parallel_workers = 3;
    assert_eq!(one, csv(&run_benchmark(&plan).unwrap().records));
    plan.master_seed = 1;
    assert_ne!(one, csv(&run_benchmark(&plan).unwrap().records));
}

#[test]
fn unreadable_case_is_recorded_as_failure() {
    let dir = tempfile::tempdir().unwrap();
    small_corpus(dir.path());
    let entry = &load_manifest(dir.path()).unwrap()[0];
    let victim = dir.path().join(&entry.path);
    fs::write(&victim, "{not json").unwrap();
    let plan = BenchPlan::new(dir.path(), vec![Method::VertexEnum]);
    let out = run_benchmark(&plan).unwrap();
    assert_eq!(out.failures.len(), 1);
    let failed: Vec<_> = out.records.iter().filter(|r| r.failed()).collect();
    assert_eq!(failed.len(), 3);
    assert!(failed
        .iter()
        .all(|r| !r.completed && r.family == "min_can_pb"));
    assert_eq!(out.records.len(), 9);
}

#[test]
fn profile_matches_brute_force_count() {
    let dir = tempfile::tempdir().unwrap();
    small_corpus(dir.path());
    let mut plan = BenchPlan::new(dir.path(), Method::ALL.to_vec());
    plan.lp_iterations = LpIterations::Fixed(2);
    plan.lp_repetitions = 1;
    let records = run_benchmark(&plan).unwrap().records;
    let text = csv(&records);
    let reread = read_records_csv(text.as_bytes()).unwrap();
    let grid = digit_grid();
    let profile = accuracy_profile(&reread, &grid).unwrap();
    for (m, curve) in &profile.curves {
        for (t, frac) in grid.iter().zip(curve) {
            let mut hit = 0;
            let mut total = 0;
            for r in &reread {
                if r.method != *m || r.truth.is_none() {
                    continue;
                }
                total += 1;
                let v = r.value.unwrap();
                let t_true = r.truth.unwrap();
                let rel = (v - t_true).abs() / t_true.abs();
                let digits = if rel == 0.0 {
                    16.0
                } else {
                    (-rel.log10()).clamp(0.0, 16.0)
                };
                // The CSV keeps six decimals of the digit count.
                if (digits * 1e6).round() / 1e6 >= *t {
                    hit += 1;
                }
            }
            assert_eq!(*frac, hit as f64 / total as f64, "{m} at {t}");
        }
    }
}

#[test]
fn budget_is_respected_within_one_granule() {
    let spec = GeneratorSpec::new(Family::AugMaxDeltaShift, 6)
        .with_delta(0.0)
        .with_seed(1);
    let case = cosmeasure::generators::generate(&spec).unwrap();
    let mut plan = BenchPlan::new("unused", vec![Method::BasisEnum]);
    plan.time_budget_secs = 0.05;
    for method in [Method::BasisEnum, Method::KktEnum, Method::RandomLp] {
        plan.lp_iterations = LpIterations::BudgetBounded;
        plan.lp_repetitions = 1;
        let start = Instant::now();
        let (_, completed, _) = run_case(&case, method, &plan, 0).unwrap();
        let secs = start.elapsed().as_secs_f64();
        assert!(!completed, "{method}");
        assert!(secs < 0.5, "{method} ran {secs} s on a 0.05 s budget");
    }
}
