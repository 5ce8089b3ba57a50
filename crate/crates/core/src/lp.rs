//! Dense two-phase tableau simplex restricted to feasibility questions
//! `{x ≥ 0 : Ax = b}`, pivoting with Bland's rule.
//!
//! Used for the positive-spanning certificate `{Sλ = 0, λ ≥ 1}` and for
//! convex-hull membership of the origin.

use nalgebra::{DMatrix, DVector};

const COST_TOL: f64 = 1e-12;

/// Returns a nonnegative solution of `a x = b` if the phase-1 optimum is
/// zero within `tol · (1 + ‖b‖₁)`.
pub fn find_nonnegative_solution(
    a: &DMatrix<f64>,
    b: &DVector<f64>,
    tol: f64,
) -> Option<DVector<f64>> {
    let (m, n) = a.shape();
    assert_eq!(b.len(), m, "row count of a and b differ");
    if m == 0 {
        return Some(DVector::zeros(n));
    }
    let width = n + m + 1;
    let rhs = width - 1;
    let mut t = DMatrix::zeros(m + 1, width);
    for i in 0..m {
        let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..n {
            t[(i, j)] = sign * a[(i, j)];
        }
        t[(i, n + i)] = 1.0;
        t[(i, rhs)] = sign * b[i];
    }
    // phase-1 cost row: minimise the sum of artificials
    for j in 0..n {
        t[(m, j)] = -(0..m).map(|i| t[(i, j)]).sum::<f64>();
    }
    t[(m, rhs)] = -(0..m).map(|i| t[(i, rhs)]).sum::<f64>();
    let mut basis: Vec<usize> = (n..n + m).collect();

    let scale = 1.0 + b.iter().map(|v| v.abs()).sum::<f64>();
    let pivot_tol = 1e-12;
    let max_iter = 50 * (m + n) + 1000;
    for _ in 0..max_iter {
        // Bland: smallest improving column
        let Some(enter) = (0..n + m).find(|&j| t[(m, j)] < -COST_TOL) else {
            break;
        };
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for i in 0..m {
            let coef = t[(i, enter)];
            if coef > pivot_tol {
                let ratio = t[(i, rhs)] / coef;
                let better = match leave {
                    None => true,
                    Some(l) => {
                        ratio < best - 1e-12 || (ratio <= best + 1e-12 && basis[i] < basis[l])
                    }
                };
                if better {
                    best = ratio;
                    leave = Some(i);
                }
            }
        }
        let Some(r) = leave else {
            // unbounded phase-1 direction cannot occur (objective ≥ 0)
            break;
        };
        pivot(&mut t, r, enter);
        basis[r] = enter;
    }

    let residual = -t[(m, rhs)];
    if residual > tol * scale {
        return None;
    }
    let mut x = DVector::zeros(n);
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[(i, rhs)].max(0.0);
        }
    }
    let err = (a * &x - b).amax();
    (err <= tol.sqrt().max(1e-6) * scale).then_some(x)
}

fn pivot(t: &mut DMatrix<f64>, r: usize, c: usize) {
    let p = t[(r, c)];
    let mut row = t.row(r).clone_owned();
    row /= p;
    t.set_row(r, &row);
    for i in 0..t.nrows() {
        if i != r {
            let f = t[(i, c)];
            if f != 0.0 {
                let mut ri = t.row_mut(i);
                ri -= &row * f;
            }
        }
    }
}

/// Whether the origin is a convex combination of the columns of `t`.
pub fn origin_in_hull(t: &DMatrix<f64>, tol: f64) -> bool {
    let n = t.nrows();
    let a = t.clone().resize_vertically(n + 1, 1.0);
    let mut b = DVector::zeros(n + 1);
    b[n] = 1.0;
    find_nonnegative_solution(&a, &b, tol).is_some()
}
