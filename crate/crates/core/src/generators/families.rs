use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::TestCase;
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;
use crate::vectors::VectorSet;

fn check_dim(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::InvalidParameter(format!(
            "dimension {n} below {min}"
        )));
    }
    Ok(())
}

pub(super) fn check_delta(n: usize, delta: f64) -> Result<()> {
    if !(delta >= 0.0 && delta < 1.0 / n as f64) {
        return Err(Error::InvalidDelta { delta, n });
    }
    Ok(())
}

fn case(
    columns: DMatrix<f64>,
    known_cm: Option<f64>,
    cosine_vector: Option<DVector<f64>>,
) -> Result<TestCase> {
    let set = VectorSet::from_matrix(columns, &Tolerances::default())?;
    Ok(TestCase {
        known_cm,
        cosine_vector,
        ..TestCase::new(set)
    })
}

pub(super) fn canonical_min_cm(n: usize) -> f64 {
    let nf = n as f64;
    1.0 / (nf * nf + 2.0 * (nf - 1.0) * nf.sqrt()).sqrt()
}

/// `{e_1, …, e_n, −e/√n}`.
pub fn canonical_minimal(n: usize) -> Result<TestCase> {
    check_dim(n, 1)?;
    let mut m = DMatrix::zeros(n, n + 1);
    m.view_mut((0, 0), (n, n)).fill_with_identity();
    m.column_mut(n).fill(-1.0);
    let cm = canonical_min_cm(n);
    let nf = n as f64;
    let mut u = DVector::repeat(n, cm);
    u[0] = -cm * (nf.sqrt() + nf - 1.0);
    case(m, Some(cm), Some(u))
}

/// `{±e_1, …, ±e_n}`.
pub fn canonical_maximal(n: usize) -> Result<TestCase> {
    check_dim(n, 1)?;
    let mut m = DMatrix::zeros(n, 2 * n);
    for i in 0..n {
        m[(i, i)] = 1.0;
        m[(i, n + i)] = -1.0;
    }
    let nf = n as f64;
    case(
        m,
        Some(1.0 / nf.sqrt()),
        Some(DVector::repeat(n, 1.0 / nf.sqrt())),
    )
}

/// Columns of the canonical uniform simplex: `n+1` unit vectors with every
/// pairwise inner product equal to `−1/n`.
///
/// Row `i` has `a_i` on the diagonal and `−a_i/(n−i+1)` to its right, with
/// `a_i = √((n−i+1)(n+1) / (n(n−i+2)))` (1-based `i`).
pub fn uniform_simplex(n: usize) -> Result<DMatrix<f64>> {
    check_dim(n, 2)?;
    let nf = n as f64;
    let mut m = DMatrix::zeros(n, n + 1);
    for i in 0..n {
        let rest = (n - i) as f64;
        let a = (rest * (nf + 1.0) / (nf * (rest + 1.0))).sqrt();
        m[(i, i)] = a;
        for j in i + 1..=n {
            m[(i, j)] = -a / rest;
        }
    }
    Ok(m)
}

/// The uniform simplex as a test case, with cosine vector `−e_1`.
pub fn uniform_simplex_case(n: usize) -> Result<TestCase> {
    let m = uniform_simplex(n)?;
    let mut u = DVector::zeros(n);
    u[0] = -1.0;
    case(m, Some(1.0 / n as f64), Some(u))
}

pub(super) fn min_shift_cm(n: usize, delta: f64) -> f64 {
    let nf = n as f64;
    (1.0 - delta * nf) / (nf * nf * delta * delta - 2.0 * nf * delta + nf * nf).sqrt()
}

pub(super) fn max_shift_cm(n: usize, delta: f64) -> f64 {
    let nf = n as f64;
    (1.0 - delta * nf) / (nf * (delta * delta * nf - 2.0 * delta + 1.0)).sqrt()
}

/// Uniform simplex with every vector but the first tilted toward `e_1`:
/// `d_1` and `α(d_i + δe_1)` for `i ≥ 2`, `α = n/√(n²δ² − 2nδ + n²)`.
pub fn minimal_delta_shift(n: usize, delta: f64) -> Result<TestCase> {
    check_dim(n, 2)?;
    check_delta(n, delta)?;
    let nf = n as f64;
    let alpha = nf / (nf * nf * delta * delta - 2.0 * nf * delta + nf * nf).sqrt();
    let mut m = uniform_simplex(n)?;
    for j in 1..=n {
        m[(0, j)] += delta;
        let mut col = m.column_mut(j);
        col *= alpha;
    }
    let mut u = DVector::zeros(n);
    u[0] = -1.0;
    case(m, Some(min_shift_cm(n, delta)), Some(u))
}

/// `αB ∪ −αB` with `B = I − δ·eeᵀ` and `α = 1/√(δ²n − 2δ + 1)`.
pub fn maximal_delta_shift(n: usize, delta: f64) -> Result<TestCase> {
    check_dim(n, 2)?;
    check_delta(n, delta)?;
    let nf = n as f64;
    let alpha = 1.0 / (delta * delta * nf - 2.0 * delta + 1.0).sqrt();
    let mut m = DMatrix::zeros(n, 2 * n);
    for j in 0..n {
        for i in 0..n {
            let b = if i == j { 1.0 - delta } else { -delta };
            m[(i, j)] = alpha * b;
            m[(i, n + j)] = -alpha * b;
        }
    }
    case(
        m,
        Some(max_shift_cm(n, delta)),
        Some(DVector::repeat(n, 1.0 / nf.sqrt())),
    )
}

/// Shift `δ` for which the minimal δ-shift basis has cosine measure `c`.
pub fn delta_for_target_min(n: usize, c: f64) -> Result<f64> {
    check_dim(n, 2)?;
    let nf = n as f64;
    let max = 1.0 / nf;
    if !(c > 0.0 && c <= max) {
        return Err(Error::TargetOutOfRange { target: c, max });
    }
    let c2 = c * c;
    let delta = 1.0 / nf + (-(nf * nf - 1.0) * (c2 * c2 - c2)).sqrt() / (nf * (c2 - 1.0));
    let delta = delta.max(0.0);
    check_delta(n, delta)?;
    Ok(delta)
}

/// Shift `δ` for which the maximal δ-shift basis has cosine measure `c`.
pub fn delta_for_target_max(n: usize, c: f64) -> Result<f64> {
    check_dim(n, 2)?;
    let nf = n as f64;
    let max = 1.0 / nf.sqrt();
    if !(c > 0.0 && c <= max) {
        return Err(Error::TargetOutOfRange { target: c, max });
    }
    let c2 = c * c;
    let delta = 1.0 / nf + ((nf - 1.0) * (c2 - c2 * c2)).sqrt() / (nf * (c2 - 1.0));
    let delta = delta.max(0.0);
    check_delta(n, delta)?;
    Ok(delta)
}

/// Block sizes: `s−n` blocks, the first `n mod (s−n)` one larger.
fn block_sizes(n: usize, s: usize) -> Result<Vec<usize>> {
    if n == 0 || s < n + 1 || s > 2 * n {
        return Err(Error::InvalidSize {
            size: s,
            min: n + 1,
            max: 2 * n,
        });
    }
    let blocks = s - n;
    let (q, r) = (n / blocks, n % blocks);
    Ok((0..blocks).map(|b| if b < r { q + 1 } else { q }).collect())
}

pub(super) fn optimal_orthogonal_cm(n: usize, s: usize) -> Result<f64> {
    let sizes = block_sizes(n, s)?;
    let sum: usize = sizes.iter().map(|m| m * m).sum();
    Ok(1.0 / (sum as f64).sqrt())
}

/// Orthogonal positive basis with `s` vectors and the largest cosine
/// measure: the coordinates split into `s−n` blocks of balanced size, each
/// carrying a uniform simplex (`{e_i, −e_i}` for a block of one).
pub fn optimal_orthogonal(n: usize, s: usize) -> Result<TestCase> {
    let sizes = block_sizes(n, s)?;
    let mut m = DMatrix::zeros(n, s);
    let mut u = DVector::zeros(n);
    let (mut row, mut col) = (0, 0);
    for &size in &sizes {
        if size == 1 {
            m[(row, col)] = 1.0;
            m[(row, col + 1)] = -1.0;
        } else {
            let block = uniform_simplex(size)?;
            m.view_mut((row, col), (size, size + 1)).copy_from(&block);
        }
        u[row] = -(size as f64);
        row += size;
        col += size + 1;
    }
    let u = u.normalize();
    case(m, Some(optimal_orthogonal_cm(n, s)?), Some(u))
}

/// Random positive spanning set built from a strictly diagonally dominant
/// basis: every column joins one of `ℓ ∈ {1, …, n−1}` groups and the
/// negated sum of each nonempty group is appended.
pub fn random_pss(n: usize, seed: u64) -> Result<TestCase> {
    check_dim(n, 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut basis = DMatrix::from_fn(n, n, |_, _| rng.random::<f64>());
    for j in 0..n {
        let off: f64 = (0..n)
            .filter(|&i| i != j)
            .map(|i| basis[(i, j)].abs())
            .sum();
        basis[(j, j)] = off + 1.0;
    }
    let groups = rng.random_range(1..=n - 1);
    let assignment: Vec<usize> = (0..n).map(|_| rng.random_range(0..groups)).collect();
    let mut columns: Vec<DVector<f64>> = basis.column_iter().map(|c| c.into_owned()).collect();
    for g in 0..groups {
        let members: Vec<usize> = (0..n).filter(|&j| assignment[j] == g).collect();
        if members.is_empty() {
            continue;
        }
        let mut sum = DVector::zeros(n);
        for &j in &members {
            sum += basis.column(j);
        }
        columns.push(-sum);
    }
    case(DMatrix::from_columns(&columns), None, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gram::cosine_along;
    use crate::spanning::is_positive_spanning;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn canonical_minimal_values() {
        let c2 = canonical_minimal(2).unwrap();
        assert!((c2.known_cm.unwrap() - 1.0 / (4.0 + 2.0 * 2f64.sqrt()).sqrt()).abs() < 1e-15);
        assert!((c2.known_cm.unwrap() - 0.3826834).abs() < 1e-7);
        assert!((canonical_minimal(3).unwrap().known_cm.unwrap() - 0.2505629).abs() < 1e-7);
        for n in 1..=8 {
            let c = canonical_minimal(n).unwrap();
            let u = c.cosine_vector.as_ref().unwrap();
            assert!((u.norm() - 1.0).abs() < 1e-14);
            let (v, _) = cosine_along(&c.set, u, &tol());
            assert!((v - c.known_cm.unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn canonical_maximal_values() {
        assert_eq!(canonical_maximal(4).unwrap().known_cm, Some(0.5));
        let one = canonical_maximal(1).unwrap();
        assert_eq!(one.known_cm, Some(1.0));
        assert_eq!(one.set.to_rows(), vec![vec![1.0, -1.0]]);
    }

    #[test]
    fn uniform_simplex_two() {
        let m = uniform_simplex(2).unwrap();
        let h = 0.75f64.sqrt();
        let expected = DMatrix::from_row_slice(2, 3, &[1.0, -0.5, -0.5, 0.0, h, -h]);
        assert!((m - expected).amax() < 1e-15);
    }

    #[test]
    fn uniform_simplex_dots_and_sum() {
        for n in 2..=9 {
            let m = uniform_simplex(n).unwrap();
            let g = m.tr_mul(&m);
            for i in 0..=n {
                assert!((g[(i, i)] - 1.0).abs() < 1e-12);
                for j in 0..i {
                    assert!((g[(i, j)] + 1.0 / n as f64).abs() < 1e-12);
                }
            }
            assert!(m.column_sum().amax() < 1e-12);
        }
    }

    #[test]
    fn minimal_shift_values_and_certificate() {
        assert!((minimal_delta_shift(2, 0.0).unwrap().known_cm.unwrap() - 0.5).abs() < 1e-15);
        let q = minimal_delta_shift(2, 0.25).unwrap().known_cm.unwrap();
        assert!((q - 0.5 / 3.25f64.sqrt()).abs() < 1e-15);
        assert!((q - 0.2773501).abs() < 1e-7);

        let n = 3;
        let delta = 2.0 / 9.0;
        let c = minimal_delta_shift(n, delta).unwrap();
        let nf = n as f64;
        let alpha = nf / (nf * nf * delta * delta - 2.0 * nf * delta + nf * nf).sqrt();
        let mut sum = c.set.vector(0) * (1.0 - delta * nf);
        for j in 1..=n {
            sum += c.set.vector(j) / alpha;
        }
        assert!(sum.amax() < 1e-12);
        assert!(is_positive_spanning(&c.set, &tol()));
    }

    #[test]
    fn maximal_shift_values() {
        let c = maximal_delta_shift(2, 0.0).unwrap();
        assert!((c.known_cm.unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
        let q = maximal_delta_shift(2, 0.25).unwrap().known_cm.unwrap();
        assert!((q - 1.0 / 5f64.sqrt()).abs() < 1e-15);
        let c = maximal_delta_shift(3, 1.0 / 6.0).unwrap();
        for v in c.set.vectors() {
            assert!((v.norm() - 1.0).abs() < 1e-12);
        }
        // every vector appears together with its negation
        let sum = c.set.matrix().column_sum();
        assert!(sum.amax() < 1e-12);
    }

    #[test]
    fn invalid_deltas() {
        assert!(matches!(
            minimal_delta_shift(3, 1.0 / 3.0),
            Err(Error::InvalidDelta { .. })
        ));
        assert!(matches!(
            maximal_delta_shift(3, -0.1),
            Err(Error::InvalidDelta { .. })
        ));
    }

    #[test]
    fn target_inversions() {
        assert_eq!(delta_for_target_min(3, 1.0 / 3.0).unwrap(), 0.0);
        let d = delta_for_target_min(3, 0.2).unwrap();
        assert!((min_shift_cm(3, d) - 0.2).abs() < 1e-10);
        assert!(matches!(
            delta_for_target_min(2, 0.6),
            Err(Error::TargetOutOfRange { .. })
        ));
        assert_eq!(delta_for_target_max(4, 0.5).unwrap(), 0.0);
        let d = delta_for_target_max(4, 0.3).unwrap();
        assert!((max_shift_cm(4, d) - 0.3).abs() < 1e-10);
        assert!(matches!(
            delta_for_target_max(4, 0.6),
            Err(Error::TargetOutOfRange { .. })
        ));
    }

    #[test]
    fn optimal_orthogonal_values() {
        let c = optimal_orthogonal(4, 6).unwrap();
        assert!((c.known_cm.unwrap() - 1.0 / 8f64.sqrt()).abs() < 1e-15);
        assert_eq!(optimal_orthogonal(4, 8).unwrap().known_cm, Some(0.5));
        let c = optimal_orthogonal(5, 7).unwrap();
        assert!((c.known_cm.unwrap() - 1.0 / 13f64.sqrt()).abs() < 1e-15);
        assert_eq!(c.set.len(), 7);
        assert!(matches!(
            optimal_orthogonal(4, 9),
            Err(Error::InvalidSize { .. })
        ));
        assert!(matches!(
            optimal_orthogonal(4, 4),
            Err(Error::InvalidSize { .. })
        ));
        for n in 2..=8 {
            for s in n + 1..=2 * n {
                let c = optimal_orthogonal(n, s).unwrap();
                let (v, _) = cosine_along(&c.set, c.cosine_vector.as_ref().unwrap(), &tol());
                assert!((v - c.known_cm.unwrap()).abs() < 1e-14, "n={n} s={s}");
            }
        }
    }

    #[test]
    fn random_pss_spans_and_is_deterministic() {
        for n in 2..=7 {
            for seed in 0..10 {
                let c = random_pss(n, seed).unwrap();
                assert!(c.set.len() > n);
                assert!(c.known_cm.is_none());
                assert!(is_positive_spanning(&c.set, &tol()), "n={n} seed={seed}");
                assert_eq!(c, random_pss(n, seed).unwrap());
            }
        }
    }
}
