use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{TestCase, Transform};
use crate::error::{Error, Result};
use crate::solvers::{sample_unit_sphere, vertex_enum_solver, SolverConfig};
use crate::tolerance::Tolerances;

/// Rejection-sampling draws allowed per added vector.
const MAX_DRAWS: u64 = 1_000_000;

/// Random rotation: `Q` from the QR factorization of a standard normal
/// matrix, with columns signed so that `R` has a positive diagonal, then one
/// column negated if needed for `det Q = +1`.
pub fn random_rotation(n: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    if n > 0 && q.determinant() < 0.0 {
        q.column_mut(0).neg_mut();
    }
    q
}

/// Apply a random rotation to every vector of the case.
pub fn rotate(tc: &TestCase, seed: u64) -> TestCase {
    let q = random_rotation(tc.set.dim(), seed);
    let mut out = tc.clone();
    out.set = tc.set.transformed(&q);
    out.cosine_vector = tc.cosine_vector.as_ref().map(|u| &q * u);
    out.transform_log.push(Transform::Rotation { seed });
    out
}

/// Reorder the vectors by a uniformly random permutation.
pub fn permute(tc: &TestCase, seed: u64) -> TestCase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..tc.set.len()).collect();
    perm.shuffle(&mut rng);
    let mut out = tc.clone();
    out.set = tc.set.permuted(&perm);
    out.transform_log.push(Transform::Permutation { seed });
    out
}

/// Add `count` random unit vectors `v` with `u*·v ≤ cm − eq_tol`, which
/// leaves the cosine measure unchanged.
///
/// `u*` is the case's closed-form cosine vector, or one found by vertex
/// enumeration when none is recorded.
pub fn augment(tc: &TestCase, count: usize, seed: u64) -> Result<TestCase> {
    if count == 0 {
        return Ok(tc.clone());
    }
    let cm = tc.known_cm.ok_or(Error::MissingCosineVector)?;
    let u = match &tc.cosine_vector {
        Some(u) => u.clone(),
        None => vertex_enum_solver(&tc.set, &SolverConfig::default())?
            .result
            .cosine_vectors
            .into_iter()
            .next()
            .ok_or(Error::MissingCosineVector)?,
    };
    let limit = cm - Tolerances::default().eq_tol;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut extra: Vec<DVector<f64>> = Vec::with_capacity(count);
    for _ in 0..count {
        let mut draws = 0u64;
        loop {
            if draws == MAX_DRAWS {
                return Err(Error::AugmentationStalled { attempts: draws });
            }
            draws += 1;
            let v = sample_unit_sphere(&mut rng, tc.set.dim());
            if u.dot(&v) <= limit {
                extra.push(v);
                break;
            }
        }
    }
    let mut out = tc.clone();
    out.set = tc.set.extended(&extra);
    out.cosine_vector = Some(u);
    out.transform_log
        .push(Transform::Augmentation { count, seed });
    Ok(out)
}
