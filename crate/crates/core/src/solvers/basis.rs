use nalgebra::DVector;

use super::incumbent::Incumbent;
use super::{Clock, SolverConfig, SolverReport, SolverStats, Status};
use crate::error::{Error, Result};
use crate::spanning::is_positive_spanning;
use crate::vectors::VectorSet;

/// Minimum Gram value over all admissible bases.
///
/// Subsets are visited in lexicographic order. The search keeps a QR
/// factorization of the current prefix, so each subset costs one
/// orthogonalization step plus an `O(n²)` triangular solve: with `B = QR`,
/// `Bᵀw = e` becomes `Rᵀz = e`, `w = Qz` and `‖w‖ = ‖z‖`. A prefix whose new
/// column has residual norm at most `rank_tol` is singular and skipped with
/// all its extensions.
pub fn basis_enumeration(set: &VectorSet, cfg: &SolverConfig) -> Result<SolverReport> {
    cfg.validate()?;
    let tol = cfg.tolerances;
    if !is_positive_spanning(set, &tol) {
        return Err(Error::NotPositiveSpanning);
    }
    let clock = Clock::start(cfg.time_budget);
    let n = set.dim();
    let mut search = Search {
        s: set.matrix().as_slice(),
        n,
        k: set.len(),
        rank_tol: tol.rank_tol,
        eq_tol: tol.eq_tol,
        cone_tol: tol.cone_tol,
        q: vec![0.0; n * n],
        r: vec![0.0; n * n],
        z: vec![0.0; n],
        w: vec![0.0; n],
        incumbent: Incumbent::new(cfg.max_reported_vectors, tol.eq_tol),
        clock,
        candidates: 0,
        timed_out: false,
    };
    search.descend(0, 0);
    let completed = !search.timed_out;
    let stats = SolverStats {
        candidates: search.candidates,
        wall_time: clock.elapsed(),
        ..Default::default()
    };
    let status = if completed {
        Status::Exact
    } else {
        Status::TimeoutIncumbent
    };
    let result = search.incumbent.finish(set, &tol, status, stats);
    Ok(SolverReport {
        result,
        method: super::Method::BasisEnum,
        completed,
    })
}

struct Search<'a> {
    /// Column-major `n × k` set.
    s: &'a [f64],
    n: usize,
    k: usize,
    rank_tol: f64,
    eq_tol: f64,
    cone_tol: f64,
    /// Orthonormal columns of the current prefix, column-major.
    q: Vec<f64>,
    /// Upper-triangular factor, column-major.
    r: Vec<f64>,
    z: Vec<f64>,
    w: Vec<f64>,
    incumbent: Incumbent,
    clock: Clock,
    candidates: u64,
    timed_out: bool,
}

impl Search<'_> {
    fn descend(&mut self, level: usize, start: usize) {
        let n = self.n;
        for i in start..=self.k - (n - level) {
            if self.timed_out {
                return;
            }
            let col = &self.s[i * n..(i + 1) * n];
            let (done, rest) = self.q.split_at_mut(level * n);
            let v = &mut rest[..n];
            v.copy_from_slice(col);
            let rcol = &mut self.r[level * n..(level + 1) * n];
            rcol.fill(0.0);
            for _ in 0..2 {
                for j in 0..level {
                    let qj = &done[j * n..(j + 1) * n];
                    let p: f64 = qj.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
                    rcol[j] += p;
                    for (x, y) in v.iter_mut().zip(qj) {
                        *x -= p * y;
                    }
                }
            }
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm <= self.rank_tol {
                continue;
            }
            rcol[level] = norm;
            for x in v.iter_mut() {
                *x /= norm;
            }
            if level + 1 == n {
                self.leaf();
            } else {
                self.descend(level + 1, i + 1);
            }
        }
    }

    fn leaf(&mut self) {
        let n = self.n;
        self.candidates += 1;
        if self.clock.expired() {
            self.timed_out = true;
            return;
        }
        for j in 0..n {
            let rcol = &self.r[j * n..(j + 1) * n];
            let acc = 1.0
                - rcol[..j]
                    .iter()
                    .zip(&self.z[..j])
                    .map(|(r, z)| r * z)
                    .sum::<f64>();
            self.z[j] = acc / rcol[j];
        }
        let znorm = self.z.iter().map(|x| x * x).sum::<f64>().sqrt();
        let gamma = 1.0 / znorm;
        if gamma > self.incumbent.best() + self.eq_tol {
            return;
        }
        self.w.fill(0.0);
        for j in 0..n {
            let c = self.z[j] / znorm;
            for (x, y) in self.w.iter_mut().zip(&self.q[j * n..(j + 1) * n]) {
                *x += c * y;
            }
        }
        let bound = gamma + self.cone_tol;
        let admissible = self
            .s
            .chunks_exact(n)
            .all(|d| d.iter().zip(&self.w).map(|(a, b)| a * b).sum::<f64>() <= bound);
        if admissible {
            self.incumbent
                .offer(gamma, DVector::from_column_slice(&self.w));
        }
    }
}
