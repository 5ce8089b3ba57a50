use nalgebra::DVector;

use crate::linalg;
use crate::lp::find_nonnegative_solution;
use crate::tolerance::Tolerances;
use crate::vectors::VectorSet;

/// `S` positively spans `R^n` iff it has rank `n` and some strictly positive
/// combination of its vectors vanishes. The latter is decided as the phase-1
/// feasibility of `{Sλ = 0, λ ≥ 1}`, written as `Sμ = −S·1, μ ≥ 0`.
pub fn is_positive_spanning(set: &VectorSet, tol: &Tolerances) -> bool {
    let s = set.matrix();
    if linalg::rank(s, tol.rank_tol) < set.dim() {
        return false;
    }
    let rhs = -(s * DVector::repeat(set.len(), 1.0));
    find_nonnegative_solution(s, &rhs, tol.eq_tol).is_some()
}
