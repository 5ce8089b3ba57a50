//! Dense linear-algebra helpers built on nalgebra's SVD and LU.

use nalgebra::{DMatrix, DVector};

/// Singular values of `m`, largest first.
pub fn singular_values(m: &DMatrix<f64>) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Numerical rank: singular values above `rank_tol · σ_max`.
pub fn rank(m: &DMatrix<f64>, rank_tol: f64) -> usize {
    let sv = singular_values(m);
    match sv.first() {
        Some(&max) if max > 0.0 => sv.iter().filter(|&&s| s > rank_tol * max).count(),
        _ => 0,
    }
}

/// Orthonormal basis (as columns) of `{x : m x = 0}`.
pub fn null_space(m: &DMatrix<f64>, rank_tol: f64) -> DMatrix<f64> {
    let n = m.ncols();
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    // pad with zero rows so the thin SVD returns a full n × n V
    let padded = if m.nrows() < n {
        m.clone().resize_vertically(n, 0.0)
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let max = svd.singular_values.max();
    let thresh = if max > 0.0 {
        rank_tol * max
    } else {
        f64::INFINITY
    };
    let mut idx: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| !(svd.singular_values[i] > thresh))
        .collect();
    idx.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
    let mut out = DMatrix::zeros(n, idx.len());
    for (c, &i) in idx.iter().enumerate() {
        let mut v = v_t.row(i).transpose();
        canonical_sign(&mut v);
        out.set_column(c, &v);
    }
    out
}

/// Flip `v` so that its largest-magnitude entry (first on ties) is positive.
pub fn canonical_sign(v: &mut DVector<f64>) {
    let mut best = 0usize;
    for i in 1..v.len() {
        if v[i].abs() > v[best].abs() + 1e-12 {
            best = i;
        }
    }
    if !v.is_empty() && v[best] < 0.0 {
        v.neg_mut();
    }
}

/// Minimum-norm least-squares solution of `a x = b` via the pseudo-inverse.
pub fn min_norm_solve(a: &DMatrix<f64>, b: &DVector<f64>, rank_tol: f64) -> DVector<f64> {
    let svd = a.clone().svd(true, true);
    let max = svd.singular_values.max();
    let eps = if max > 0.0 { rank_tol * max } else { 0.0 };
    svd.solve(b, eps)
        .unwrap_or_else(|_| DVector::zeros(a.ncols()))
}

/// Lexicographically smallest linearly independent subset of the given
/// rows, taken greedily in the order supplied. Rows are assumed unit-length.
pub fn greedy_independent(rows: &[DVector<f64>], rank_tol: f64) -> Vec<usize> {
    let mut chosen = Vec::new();
    let mut ortho: Vec<DVector<f64>> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut v = r.clone();
        for _ in 0..2 {
            for q in &ortho {
                let p = q.dot(&v);
                v.axpy(-p, q, 1.0);
            }
        }
        let norm = v.norm();
        if norm > rank_tol * r.norm().max(1.0) {
            ortho.push(v / norm);
            chosen.push(i);
        }
    }
    chosen
}
