//! The polytope `P = {x ∈ R^n : d·x ≤ 1 for all d ∈ S}`.
//!
//! `P` is bounded exactly when `S` positively spans `R^n`, and then the
//! cosine measure is the reciprocal norm of its furthest vertex: a vertex
//! `x` with a basis `B` among its tight constraints gives the Gram vector
//! `x/‖x‖` of `B` with Gram value `1/‖x‖`.

mod reverse_search;
mod simplex;

use nalgebra::DVector;

pub use reverse_search::VertexEnumeration;

use crate::gram::GramInfo;
use crate::linalg;
use crate::tolerance::Tolerances;
use crate::vectors::VectorSet;

/// Half-space system `{x : d_i·x ≤ 1}` with one constraint per vector of
/// the source set, in the same order.
#[derive(Debug, Clone, Copy)]
pub struct Polytope<'a> {
    set: &'a VectorSet,
    tol: Tolerances,
}

/// A vertex of `P` with its tight constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct Vertex {
    pub point: DVector<f64>,
    /// Every `i` with `d_i·x = 1` within `eq_tol`, ascending.
    pub tight_set: Vec<usize>,
    /// Lexicographically smallest rank-`n` subset of `tight_set`.
    pub defining_basis: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpOutcome {
    pub status: LpStatus,
    /// Optimal objective; `+∞` when unbounded.
    pub objective: f64,
    /// Maximizing vertex. `None` when unbounded, or when `P` contains a line
    /// and the optimum is attained on a face without vertices.
    pub vertex: Option<Vertex>,
    pub pivots: usize,
}

pub fn build_polytope<'a>(set: &'a VectorSet, tol: &Tolerances) -> Polytope<'a> {
    Polytope::new(set, tol)
}

impl<'a> Polytope<'a> {
    pub fn new(set: &'a VectorSet, tol: &Tolerances) -> Self {
        Self { set, tol: *tol }
    }

    pub fn source(&self) -> &'a VectorSet {
        self.set
    }

    pub fn dim(&self) -> usize {
        self.set.dim()
    }

    pub fn num_constraints(&self) -> usize {
        self.set.len()
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    /// Largest constraint violation `max_i (d_i·x − 1)`, clipped at zero.
    pub fn violation(&self, x: &DVector<f64>) -> f64 {
        self.set.dots(x).iter().fold(0.0f64, |m, &v| m.max(v - 1.0))
    }

    pub fn contains(&self, x: &DVector<f64>) -> bool {
        self.violation(x) <= self.tol.eq_tol
    }

    /// Describe the point `x` as a vertex, if it has `n` independent tight
    /// constraints.
    pub fn vertex_at(&self, x: DVector<f64>) -> Option<Vertex> {
        let dots = self.set.dots(&x);
        let tight_set: Vec<usize> = (0..self.set.len())
            .filter(|&i| (dots[i] - 1.0).abs() <= self.tol.eq_tol)
            .collect();
        let rows: Vec<DVector<f64>> = tight_set
            .iter()
            .map(|&i| self.set.vector(i).into_owned())
            .collect();
        let picked = linalg::greedy_independent(&rows, self.tol.rank_tol);
        if picked.len() < self.dim() {
            return None;
        }
        let defining_basis = picked
            .iter()
            .take(self.dim())
            .map(|&p| tight_set[p])
            .collect();
        Some(Vertex {
            point: x,
            tight_set,
            defining_basis,
        })
    }
}

/// Gram vector `x/‖x‖` and Gram value `1/‖x‖` of a vertex's defining basis.
pub fn vertex_to_gram(vertex: &Vertex) -> GramInfo {
    let norm = vertex.point.norm();
    GramInfo {
        basis_indices: vertex.defining_basis.clone(),
        gram_vector: &vertex.point / norm,
        gram_value: 1.0 / norm,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vectors::normalize_set;

    fn square() -> VectorSet {
        normalize_set(
            &[
                vec![1.0, 0.0],
                vec![-1.0, 0.0],
                vec![0.0, 1.0],
                vec![0.0, -1.0],
            ],
            &Tolerances::default(),
        )
        .unwrap()
    }

    #[test]
    fn constraints_follow_set_order() {
        let s = square();
        let p = build_polytope(&s, &Tolerances::default());
        assert_eq!(p.num_constraints(), 4);
        assert!(p.contains(&DVector::from_vec(vec![1.0, -1.0])));
        assert!(!p.contains(&DVector::from_vec(vec![1.1, 0.0])));
        // origin is strictly interior
        assert!(s.dots(&DVector::zeros(2)).iter().all(|&v| v < 1.0));
    }

    #[test]
    fn square_corner_to_gram() {
        let s = square();
        let p = build_polytope(&s, &Tolerances::default());
        let v = p.vertex_at(DVector::from_vec(vec![1.0, 1.0])).unwrap();
        assert_eq!(v.tight_set, vec![0, 2]);
        assert_eq!(v.defining_basis, vec![0, 2]);
        let g = vertex_to_gram(&v);
        let h = 0.5f64.sqrt();
        assert!((g.gram_value - h).abs() < 1e-15);
        assert!((g.gram_vector[0] - h).abs() < 1e-15);
        assert!(p.vertex_at(DVector::from_vec(vec![1.0, 0.0])).is_none());
    }
}
