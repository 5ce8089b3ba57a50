//! Gram matrices, Gram vectors, and the minimum cosine cone test.
//!
//! For a basis `B = {d_1, ..., d_n}` of unit vectors there is a unique unit
//! vector `u` with `u·d_i = γ_B > 0` for every `i`; `u` is the Gram vector and
//! `γ_B = 1/√(eᵀ Gram(B)⁻¹ e)` the Gram value. Every cosine vector of a
//! positive spanning set is the Gram vector of some basis drawn from it.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;
use crate::vectors::VectorSet;

#[derive(Debug, Clone, PartialEq)]
pub struct GramInfo {
    pub basis_indices: Vec<usize>,
    pub gram_vector: DVector<f64>,
    pub gram_value: f64,
}

/// `Gram = SᵀS` restricted to `indices`.
pub fn gram_matrix(set: &VectorSet, indices: &[usize]) -> DMatrix<f64> {
    let s = set.select(indices);
    s.tr_mul(&s)
}

/// Gram vector and value of the basis `basis_indices`.
///
/// Solves `Bᵀw = e` and returns `u = w/‖w‖`, `γ = 1/‖w‖`. The explicit
/// inverse of the Gram matrix is never formed.
pub fn gram_vector(set: &VectorSet, basis_indices: &[usize], tol: &Tolerances) -> Result<GramInfo> {
    let n = set.dim();
    if basis_indices.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: basis_indices.len(),
        });
    }
    let bt = set.select(basis_indices).transpose();
    let svd = bt.svd(true, true);
    let max = svd.singular_values.max();
    let min = svd.singular_values.min();
    if !(max > 0.0) || !(min > tol.rank_tol * max) {
        return Err(Error::SingularBasis(basis_indices.to_vec()));
    }
    let w = svd
        .solve(&DVector::repeat(n, 1.0), 0.0)
        .map_err(|_| Error::SingularBasis(basis_indices.to_vec()))?;
    let norm = w.norm();
    Ok(GramInfo {
        basis_indices: basis_indices.to_vec(),
        gram_vector: w / norm,
        gram_value: 1.0 / norm,
    })
}

/// Sherman–Morrison: `(A + uvᵀ)⁻¹ = A⁻¹ − A⁻¹uvᵀA⁻¹ / (1 + vᵀA⁻¹u)`.
pub fn rank1_update_inverse(
    a_inv: &DMatrix<f64>,
    u: &DVector<f64>,
    v: &DVector<f64>,
    rank_tol: f64,
) -> Result<DMatrix<f64>> {
    let a_inv_u = a_inv * u;
    let v_a_inv = a_inv.tr_mul(v);
    let denom = 1.0 + v.dot(&a_inv_u);
    if denom.abs() <= rank_tol {
        return Err(Error::UpdateSingular(denom));
    }
    Ok(a_inv - (a_inv_u * v_a_inv.transpose()) / denom)
}

/// Indices `i` with `d_i·y > alpha + cone_tol`, i.e. the members of `S`
/// lying in the open cone `K°_α(y)`. An empty result certifies the candidate.
pub fn cone_violators(
    set: &VectorSet,
    y: &DVector<f64>,
    alpha: f64,
    tol: &Tolerances,
) -> Vec<usize> {
    set.dots(y)
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > alpha + tol.cone_tol)
        .map(|(i, _)| i)
        .collect()
}

/// Faster emptiness check for `cone_violators`.
pub(crate) fn cone_is_empty(
    set: &VectorSet,
    y: &DVector<f64>,
    alpha: f64,
    tol: &Tolerances,
) -> bool {
    set.vectors().all(|d| d.dot(y) <= alpha + tol.cone_tol)
}

/// `max_i d_i·v` together with the indices attaining it within `eq_tol`.
pub fn cosine_along(set: &VectorSet, v: &DVector<f64>, tol: &Tolerances) -> (f64, Vec<usize>) {
    let dots = set.dots(v);
    let value = dots.max();
    let active = dots
        .iter()
        .enumerate()
        .filter(|(_, &c)| c >= value - tol.eq_tol)
        .map(|(i, _)| i)
        .collect();
    (value, active)
}
