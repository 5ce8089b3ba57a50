#![allow(dead_code)]

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use cosmeasure::{Tolerances, VectorSet};

/// Every vertex of `{x : Sᵀx ≤ 1}` from all `n`-subsets, deduplicated.
pub fn brute_force_vertices(set: &VectorSet) -> Vec<DVector<f64>> {
    let n = set.dim();
    let mut out: Vec<DVector<f64>> = Vec::new();
    for comb in (0..set.len()).combinations(n) {
        let m = set.select(&comb).transpose();
        let Some(inv) = m.clone().try_inverse() else {
            continue;
        };
        if m.norm() * inv.norm() > 1e8 {
            continue;
        }
        let x = inv * DVector::repeat(n, 1.0);
        if set.dots(&x).max() > 1.0 + 1e-9 {
            continue;
        }
        if !out.iter().any(|y| (y - &x).amax() < 1e-8) {
            out.push(x);
        }
    }
    out
}

/// Cosine measure as the reciprocal norm of the furthest vertex.
pub fn brute_force_cm(set: &VectorSet) -> f64 {
    let far = brute_force_vertices(set)
        .iter()
        .map(|x| x.norm())
        .fold(0.0, f64::max);
    1.0 / far
}

/// Gaussian vectors plus the negated sum, which always positively span.
pub fn random_spanning_set(n: usize, extra: usize, seed: u64) -> VectorSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = n + extra;
    let mut m = DMatrix::zeros(n, k + 1);
    for j in 0..k {
        for i in 0..n {
            m[(i, j)] = rng.sample::<f64, _>(StandardNormal);
        }
    }
    let sum: DVector<f64> = m.column_sum();
    m.set_column(k, &(-sum));
    VectorSet::from_matrix(m, &Tolerances::default()).unwrap()
}

pub fn same_points(a: &[DVector<f64>], b: &[DVector<f64>], tol: f64) -> bool {
    a.len() == b.len() && a.iter().all(|x| b.iter().any(|y| (x - y).amax() < tol))
}
