use std::cmp::Ordering;

use nalgebra::DVector;

use super::{CosineResult, SolverStats, Status};
use crate::gram::cosine_along;
use crate::tolerance::Tolerances;
use crate::vectors::VectorSet;

/// Distance below which two reported unit vectors count as the same.
const DUPLICATE_TOL: f64 = 1e-7;

/// Smallest value seen so far and every vector attaining it within `eq_tol`.
#[derive(Debug)]
pub(crate) struct Incumbent {
    best: f64,
    entries: Vec<(f64, DVector<f64>)>,
    cap: usize,
    eq_tol: f64,
    truncated: bool,
}

impl Incumbent {
    pub(crate) fn new(cap: usize, eq_tol: f64) -> Self {
        Self {
            best: f64::INFINITY,
            entries: Vec::new(),
            cap,
            eq_tol,
            truncated: false,
        }
    }

    pub(crate) fn best(&self) -> f64 {
        self.best
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub(crate) fn offer(&mut self, value: f64, v: DVector<f64>) {
        if value < self.best - self.eq_tol {
            self.best = value;
            self.entries.clear();
            self.truncated = false;
        } else if value > self.best + self.eq_tol {
            return;
        } else if value < self.best {
            self.best = value;
            let limit = value + self.eq_tol;
            self.entries.retain(|(x, _)| *x <= limit);
        }
        if self
            .entries
            .iter()
            .any(|(_, w)| (w - &v).amax() < DUPLICATE_TOL)
        {
            return;
        }
        if self.entries.len() >= self.cap {
            self.truncated = true;
            return;
        }
        self.entries.push((value, v));
    }

    /// Without any candidate the trivial bound `cm ≤ 1` is reported.
    pub(crate) fn finish(
        self,
        set: &VectorSet,
        tol: &Tolerances,
        status: Status,
        stats: SolverStats,
    ) -> CosineResult {
        let value = if self.entries.is_empty() {
            1.0
        } else {
            self.best
        };
        let mut cosine_vectors: Vec<DVector<f64>> =
            self.entries.into_iter().map(|(_, v)| v).collect();
        cosine_vectors.sort_by(lex_cmp);
        let active_sets = cosine_vectors
            .iter()
            .map(|v| cosine_along(set, v, tol).1)
            .collect();
        CosineResult {
            value,
            cosine_vectors,
            truncated: self.truncated,
            active_sets,
            status,
            stats,
        }
    }
}

fn lex_cmp(a: &DVector<f64>, b: &DVector<f64>) -> Ordering {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}
