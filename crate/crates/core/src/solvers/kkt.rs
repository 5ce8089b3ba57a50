use itertools::Itertools;
use nalgebra::{DMatrix, DVector};

use super::incumbent::Incumbent;
use super::{Clock, Method, SolverConfig, SolverReport, SolverStats, Status};
use crate::error::{Error, Result};
use crate::gram::cone_is_empty;
use crate::linalg;
use crate::lp::origin_in_hull;
use crate::vectors::VectorSet;

/// Enumerate KKT points of the cosine-measure problem over every subset `T`
/// of size `2..=n+1`.
///
/// If `T` has rank `n`, the candidate is `x = Tβ/‖Tβ‖` with `β` the
/// minimum-norm solution of `Gram(T)β = e`, valued at `x·d` for the first
/// member `d` of `T`; `−x` is tried as well. Otherwise, if `[Tᵀ −e]` has rank
/// `n` and `0 ∈ conv(T)`, the unit normals of `T` are candidates of value 0.
/// A candidate counts only if no vector of the set lies in its open cone.
pub fn kkt_enumeration(set: &VectorSet, cfg: &SolverConfig) -> Result<SolverReport> {
    cfg.validate()?;
    let tol = cfg.tolerances;
    let (n, k) = (set.dim(), set.len());
    if k < 2 {
        return Err(Error::InvalidParameter(
            "KKT enumeration needs at least two vectors".into(),
        ));
    }
    let clock = Clock::start(cfg.time_budget);
    let mut incumbent = Incumbent::new(cfg.max_reported_vectors, tol.eq_tol);
    let mut stats = SolverStats::default();
    let mut completed = true;

    'outer: for m in 2..=(n + 1).min(k) {
        for subset in (0..k).combinations(m) {
            if clock.expired() {
                completed = false;
                break 'outer;
            }
            stats.candidates += 1;
            let t = set.select(&subset);
            let rank = linalg::rank(&t, tol.rank_tol);
            if rank == n {
                let gram = t.tr_mul(&t);
                let beta = linalg::min_norm_solve(&gram, &DVector::repeat(m, 1.0), tol.rank_tol);
                let y = &t * beta;
                let norm = y.norm();
                if !(norm > tol.rank_tol) {
                    continue;
                }
                let x = y / norm;
                let first = t.column(0);
                for x in [-&x, x] {
                    let gamma = x.dot(&first);
                    if cone_is_empty(set, &x, gamma, &tol) {
                        incumbent.offer(gamma, x);
                    }
                }
            } else {
                let tt = t.transpose();
                let augmented =
                    DMatrix::from_fn(m, n + 1, |i, j| if j < n { tt[(i, j)] } else { -1.0 });
                if linalg::rank(&augmented, tol.rank_tol) != n || !origin_in_hull(&t, tol.eq_tol) {
                    continue;
                }
                stats.lps_solved += 1;
                let normals = linalg::null_space(&tt, tol.rank_tol);
                for c in 0..normals.ncols() {
                    let x = normals.column(c).into_owned();
                    for x in [-&x, x] {
                        if cone_is_empty(set, &x, 0.0, &tol) {
                            incumbent.offer(0.0, x);
                        }
                    }
                }
            }
        }
    }

    if completed && incumbent.is_empty() {
        return Err(Error::NoCandidateFound);
    }
    stats.wall_time = clock.elapsed();
    let status = if completed {
        Status::Exact
    } else {
        Status::TimeoutIncumbent
    };
    Ok(SolverReport {
        result: incumbent.finish(set, &tol, status, stats),
        method: Method::KktEnum,
        completed,
    })
}
