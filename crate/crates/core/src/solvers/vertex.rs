use super::incumbent::Incumbent;
use super::{Clock, Method, SolverConfig, SolverReport, SolverStats, Status};
use crate::error::{Error, Result};
use crate::polytope::Polytope;
use crate::spanning::is_positive_spanning;
use crate::vectors::VectorSet;

/// `cm(S) = 1/‖v*‖` for the furthest vertex `v*` of `{x : Sᵀx ≤ 1}`; the
/// cosine vectors are `v/‖v‖` over all furthest vertices.
pub fn vertex_enum_solver(set: &VectorSet, cfg: &SolverConfig) -> Result<SolverReport> {
    cfg.validate()?;
    let tol = cfg.tolerances;
    if !is_positive_spanning(set, &tol) {
        return Err(Error::NotPositiveSpanning);
    }
    let clock = Clock::start(cfg.time_budget);
    let poly = Polytope::new(set, &tol);
    let vertices = poly.enumerate_vertices().map_err(|e| match e {
        Error::UnboundedPolytope => Error::NotPositiveSpanning,
        other => other,
    })?;
    let mut incumbent = Incumbent::new(cfg.max_reported_vectors, tol.eq_tol);
    let mut stats = SolverStats {
        lps_solved: 2 * set.dim() as u64,
        ..Default::default()
    };
    let mut completed = true;
    for vertex in vertices {
        stats.candidates += 1;
        let norm = vertex.point.norm();
        incumbent.offer(1.0 / norm, vertex.point / norm);
        if clock.expired() {
            completed = false;
            break;
        }
    }
    stats.wall_time = clock.elapsed();
    let status = if completed {
        Status::Exact
    } else {
        Status::TimeoutIncumbent
    };
    Ok(SolverReport {
        result: incumbent.finish(set, &tol, status, stats),
        method: Method::VertexEnum,
        completed,
    })
}
