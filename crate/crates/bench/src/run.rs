use std::time::Instant;

use cosmeasure::generators::{derive_seed, permute, rotate, TestCase};
use cosmeasure::solvers::{solve, Method, SolverConfig};
use cosmeasure::testset_io::{load_case, load_manifest, ManifestEntry};
use rayon::prelude::*;

use crate::records::{correct_digits, AccuracyRecord};
use crate::{BenchError, BenchPlan};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchOutcome {
    /// Sorted by case id, then method.
    pub records: Vec<AccuracyRecord>,
    /// Cases that could not be loaded plus solver runs that returned an error.
    pub failures: Vec<String>,
}

pub fn case_id(path: &str, rotation: usize) -> String {
    format!("{path}#r{rotation}")
}

/// FNV-1a, stable across platforms and toolchains.
fn path_hash(path: &str) -> u64 {
    path.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

struct Draw {
    id: String,
    family: String,
    seed: u64,
    case: TestCase,
}

struct Job<'a> {
    draw: &'a Draw,
    method: Method,
}

/// Value, completion flag and wall time in milliseconds of one method on one
/// set. The random-LP heuristic is repeated `lp_repetitions` times with
/// independent seeds and its values averaged.
pub fn run_case(
    case: &TestCase,
    method: Method,
    plan: &BenchPlan,
    seed: u64,
) -> Result<(f64, bool, f64), String> {
    let reps = if method.is_exact() {
        1
    } else {
        plan.lp_repetitions
    };
    let mut total = 0.0;
    let mut completed = true;
    let start = Instant::now();
    for rep in 0..reps {
        let cfg = SolverConfig {
            time_budget: Some(plan.budget()),
            rng_seed: derive_seed(seed, &[method as u64, rep as u64]),
            lp_iterations: plan.lp_iterations.rounds(case.set.dim()),
            ..Default::default()
        };
        let report = solve(&case.set, method, &cfg).map_err(|e| e.to_string())?;
        total += report.result.value;
        completed &= report.completed;
    }
    Ok((
        total / reps as f64,
        completed,
        start.elapsed().as_secs_f64() * 1e3,
    ))
}

fn load_draws(plan: &BenchPlan, entry: &ManifestEntry) -> Result<Vec<Draw>, String> {
    let path = plan.corpus_root().join(&entry.path);
    let base = load_case(&path).map_err(|e| e.to_string())?;
    let stem = path_hash(&entry.path);
    Ok((0..plan.rotations_per_instance)
        .map(|r| {
            let seed = derive_seed(plan.master_seed, &[stem, r as u64]);
            let rotated = rotate(&base, derive_seed(seed, &[1]));
            Draw {
                id: case_id(&entry.path, r),
                family: entry.family.set_type().to_string(),
                seed,
                case: permute(&rotated, derive_seed(seed, &[2])),
            }
        })
        .collect())
}

/// Run every applicable method on every draw of every manifest entry.
///
/// A case that fails to load or a solver that errors yields records with an
/// empty value; the sweep continues.
pub fn run_benchmark(plan: &BenchPlan) -> Result<BenchOutcome, BenchError> {
    plan.validate()?;
    let manifest = load_manifest(&plan.corpus_root())?;
    let mut records = Vec::new();
    let mut failures = Vec::new();
    let mut draws = Vec::new();
    for entry in &manifest {
        let methods = plan.methods.iter().filter(|m| plan.applies(**m, entry.n));
        match load_draws(plan, entry) {
            Ok(d) => draws.extend(d),
            Err(msg) => {
                failures.push(format!("{}: {msg}", entry.path));
                for r in 0..plan.rotations_per_instance {
                    for &method in methods.clone() {
                        records.push(AccuracyRecord {
                            case_id: case_id(&entry.path, r),
                            family: entry.family.set_type().to_string(),
                            n: entry.n,
                            k: 0,
                            method,
                            seed: 0,
                            value: None,
                            truth: None,
                            correct_digits: None,
                            wall_ms: None,
                            completed: false,
                        });
                    }
                }
            }
        }
    }
    let jobs: Vec<Job> = draws
        .iter()
        .flat_map(|draw| {
            plan.methods
                .iter()
                .filter(|m| plan.applies(**m, draw.case.set.dim()))
                .map(move |&method| Job { draw, method })
        })
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(plan.parallel_workers)
        .build()
        .map_err(|e| BenchError::Plan(e.to_string()))?;
    let results: Vec<(AccuracyRecord, Option<String>)> = pool.install(|| {
        jobs.par_iter()
            .map(|job| {
                let case = &job.draw.case;
                let truth = case.known_cm;
                let (value, completed, wall, err) =
                    match run_case(case, job.method, plan, job.draw.seed) {
                        Ok((v, c, w)) => (Some(v), c, Some(w), None),
                        Err(e) => (
                            None,
                            false,
                            None,
                            Some(format!("{} {}: {e}", job.draw.id, job.method)),
                        ),
                    };
                let record = AccuracyRecord {
                    case_id: job.draw.id.clone(),
                    family: job.draw.family.clone(),
                    n: case.set.dim(),
                    k: case.set.len(),
                    method: job.method,
                    seed: job.draw.seed,
                    value,
                    truth,
                    correct_digits: correct_digits(value, truth),
                    wall_ms: wall.filter(|_| plan.record_wall_time),
                    completed,
                };
                (record, err)
            })
            .collect()
    });
    for (rec, err) in results {
        records.push(rec);
        failures.extend(err);
    }
    records.sort_by(|a, b| a.case_id.cmp(&b.case_id).then(a.method.cmp(&b.method)));
    Ok(BenchOutcome { records, failures })
}
