use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::incumbent::Incumbent;
use super::{Clock, Method, SolverConfig, SolverReport, SolverStats, Status};
use crate::error::{Error, Result};
use crate::polytope::{LpOutcome, LpStatus, Polytope};
use crate::vectors::VectorSet;

/// Uniform sample from the unit sphere in `R^n`: a normalized standard
/// normal vector.
pub fn sample_unit_sphere<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DVector<f64> {
    assert!(n >= 1, "sphere dimension must be positive");
    loop {
        let v = DVector::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal));
        let norm = v.norm();
        if norm > 0.0 && norm.is_finite() {
            return v / norm;
        }
    }
}

/// Random stream of one round, derived from `(seed, round)` only.
fn round_rng(seed: u64, round: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(round);
    rng
}

/// One round of the heuristic: maximize a uniformly random linear objective.
pub fn random_lp_round(poly: &Polytope<'_>, seed: u64, round: u64) -> LpOutcome {
    let c = sample_unit_sphere(&mut round_rng(seed, round), poly.dim());
    poly.solve_lp(&c)
}

/// Furthest vertex among the LP optima of `lp_iterations` random objectives.
///
/// Every LP optimum is a vertex, so the reported value never falls below
/// the cosine measure.
pub fn random_lp_solver(set: &VectorSet, cfg: &SolverConfig) -> Result<SolverReport> {
    cfg.validate()?;
    let tol = cfg.tolerances;
    let n = set.dim();
    let clock = Clock::start(cfg.time_budget);
    let poly = Polytope::new(set, &tol);
    let mut stats = SolverStats::default();
    for i in 0..n {
        for sign in [1.0, -1.0] {
            let mut c = DVector::zeros(n);
            c[i] = sign;
            stats.lps_solved += 1;
            if poly.solve_lp(&c).status == LpStatus::Unbounded {
                return Err(Error::NotPositiveSpanning);
            }
        }
    }

    let mut incumbent = Incumbent::new(cfg.max_reported_vectors, tol.eq_tol);
    let mut completed = true;
    for round in 0..cfg.lp_iterations as u64 {
        if round > 0 && clock.expired() {
            completed = false;
            break;
        }
        stats.candidates += 1;
        stats.lps_solved += 1;
        let out = random_lp_round(&poly, cfg.rng_seed, round);
        if out.status == LpStatus::Unbounded {
            return Err(Error::NotPositiveSpanning);
        }
        if let Some(v) = out.vertex {
            let norm = v.point.norm();
            incumbent.offer(1.0 / norm, v.point / norm);
        }
        stats.trace.push(incumbent.best());
    }
    stats.wall_time = clock.elapsed();
    let status = if completed {
        Status::Heuristic
    } else {
        Status::TimeoutIncumbent
    };
    Ok(SolverReport {
        result: incumbent.finish(set, &tol, status, stats),
        method: Method::RandomLp,
        completed,
    })
}
