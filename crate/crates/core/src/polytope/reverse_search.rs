//! Vertex enumeration by reverse search (Avis–Fukuda).
//!
//! Dictionaries are indexed by bases: `n` constraint indices whose rows are
//! independent. Degeneracy is handled by lexicographic perturbation of the
//! right-hand side, `b_i = 1 + ε^i`, so only lexicographically feasible
//! bases take part. The search tree is defined by a Bland-rule simplex
//! toward the root basis; each tree edge is a single pivot, so memory stays
//! proportional to the tree depth.

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};

use super::{LpStatus, Polytope, Vertex};
use crate::error::{Error, Result};
use crate::gram::rank1_update_inverse;

const PIVOT_TOL: f64 = 1e-12;
const PRICE_TOL: f64 = 1e-11;
const LEX_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
struct Dict {
    /// Ascending constraint indices.
    basis: Vec<usize>,
    /// Inverse of the matrix whose rows are the basis constraints.
    inv: DMatrix<f64>,
    x: DVector<f64>,
    slack: DVector<f64>,
    /// Rank-one updates applied since the inverse was last formed directly.
    age: usize,
}

#[derive(Debug)]
struct Frame {
    dict: Dict,
    next: usize,
}

/// Lazy iterator over the vertices of a bounded polytope.
///
/// Every vertex is produced exactly once, at its lexicographically smallest
/// feasible basis. Dropping the iterator stops the search.
#[derive(Debug)]
pub struct VertexEnumeration<'a> {
    poly: Polytope<'a>,
    objective: DVector<f64>,
    root: Option<Dict>,
    stack: Vec<Frame>,
    visited: usize,
}

impl<'a> Polytope<'a> {
    /// Start a reverse search over the vertices.
    ///
    /// Fails with [`Error::UnboundedPolytope`] when the polytope is
    /// unbounded, detected by maximizing `±e_i` for every coordinate.
    pub fn enumerate_vertices(&self) -> Result<VertexEnumeration<'a>> {
        let n = self.dim();
        if self.num_constraints() < n + 1 {
            return Err(Error::UnboundedPolytope);
        }
        let mut start: Option<Vertex> = None;
        for i in 0..n {
            for sign in [1.0, -1.0] {
                let mut c = DVector::zeros(n);
                c[i] = sign;
                let out = self.solve_lp(&c);
                if out.status == LpStatus::Unbounded {
                    return Err(Error::UnboundedPolytope);
                }
                if start.is_none() {
                    start = out.vertex;
                }
            }
        }
        let start = start.ok_or_else(|| Error::Numerical("no starting vertex".into()))?;
        let root = start
            .tight_set
            .iter()
            .copied()
            .combinations(n)
            .filter_map(|b| self.dict(b))
            .find(|d| self.lex_feasible(d))
            .ok_or_else(|| Error::Numerical("no lexicographically feasible basis".into()))?;
        let mut objective = DVector::zeros(n);
        for &i in &root.basis {
            objective += self.set.vector(i);
        }
        Ok(VertexEnumeration {
            poly: *self,
            objective,
            root: Some(root),
            stack: Vec::new(),
            visited: 0,
        })
    }

    fn rows(&self, basis: &[usize]) -> DMatrix<f64> {
        self.set.select(basis).transpose()
    }

    fn dict(&self, basis: Vec<usize>) -> Option<Dict> {
        let m = self.rows(&basis);
        let inv = m.clone().try_inverse()?;
        if !(m.norm() * inv.norm() < 1.0 / self.tol.rank_tol) {
            return None;
        }
        Some(self.dict_with_inverse(basis, inv, 0))
    }

    fn dict_with_inverse(&self, basis: Vec<usize>, inv: DMatrix<f64>, age: usize) -> Dict {
        let x = &inv * DVector::repeat(self.dim(), 1.0);
        let slack = DVector::repeat(self.num_constraints(), 1.0) - self.set.dots(&x);
        Dict {
            basis,
            inv,
            x,
            slack,
            age,
        }
    }

    /// Coefficient of `ε^m` in the perturbed slack of constraint `j`, given
    /// `w = A_B⁻ᵀ a_j`.
    fn perturbation(d: &Dict, w: &DVector<f64>, j: usize, m: usize) -> f64 {
        let mut c = if m == j { 1.0 } else { 0.0 };
        if let Ok(q) = d.basis.binary_search(&m) {
            c -= w[q];
        }
        c
    }

    fn lex_feasible(&self, d: &Dict) -> bool {
        for j in 0..self.num_constraints() {
            if d.basis.binary_search(&j).is_ok() || d.slack[j] > self.tol.eq_tol {
                continue;
            }
            if d.slack[j] < -self.tol.eq_tol {
                return false;
            }
            let w = d.inv.tr_mul(&self.set.vector(j));
            let mut keys = d.basis.clone();
            keys.push(j);
            keys.sort_unstable();
            for m in keys {
                let c = Self::perturbation(d, &w, j, m);
                if c > LEX_TOL {
                    break;
                }
                if c < -LEX_TOL {
                    return false;
                }
            }
        }
        true
    }

    /// Whether constraint `j` precedes `i` in the lexicographic ratio test.
    fn lex_precedes(&self, d: &Dict, ad: &DVector<f64>, j: usize, i: usize) -> bool {
        let rj = d.slack[j].max(0.0) / ad[j];
        let ri = d.slack[i].max(0.0) / ad[i];
        let tie = LEX_TOL * (1.0 + rj.abs().max(ri.abs()));
        if rj < ri - tie {
            return true;
        }
        if rj > ri + tie {
            return false;
        }
        let wj = d.inv.tr_mul(&self.set.vector(j));
        let wi = d.inv.tr_mul(&self.set.vector(i));
        let mut keys = d.basis.clone();
        keys.push(i);
        keys.push(j);
        keys.sort_unstable();
        for m in keys {
            let cj = Self::perturbation(d, &wj, j, m) / ad[j];
            let ci = Self::perturbation(d, &wi, i, m) / ad[i];
            if cj < ci - LEX_TOL {
                return true;
            }
            if cj > ci + LEX_TOL {
                return false;
            }
        }
        false
    }

    /// Entering constraint when basis position `p` leaves.
    fn lex_entering(&self, d: &Dict, p: usize) -> Option<usize> {
        let dir = -d.inv.column(p).into_owned();
        let ad = self.set.dots(&dir);
        let mut best: Option<usize> = None;
        for j in 0..self.num_constraints() {
            if ad[j] <= PIVOT_TOL || d.basis.binary_search(&j).is_ok() {
                continue;
            }
            best = match best {
                Some(i) if !self.lex_precedes(d, &ad, j, i) => Some(i),
                _ => Some(j),
            };
        }
        best
    }

    /// The pivot `B − B_p + j` if it is a child of `d` in the search tree.
    fn child(&self, d: &Dict, p: usize, objective: &DVector<f64>) -> Option<Dict> {
        let n = self.dim();
        let j = self.lex_entering(d, p)?;
        let leaving = d.basis[p];
        let mut e_p = DVector::zeros(n);
        e_p[p] = 1.0;
        let delta = self.set.vector(j) - self.set.vector(leaving);
        let inv = rank1_update_inverse(&d.inv, &e_p, &delta, self.tol.rank_tol).ok()?;

        // the parent of B' must be B: Bland's rule at B' has to pick j
        let lambda = inv.tr_mul(objective);
        let price = PRICE_TOL * objective.norm().max(1.0);
        let first = (0..n)
            .filter(|&q| lambda[q] < -price)
            .map(|q| if q == p { j } else { d.basis[q] })
            .min()?;
        if first != j {
            return None;
        }

        let mut order: Vec<usize> = (0..n).collect();
        let label = |q: usize| if q == p { j } else { d.basis[q] };
        order.sort_unstable_by_key(|&q| label(q));
        let basis: Vec<usize> = order.iter().map(|&q| label(q)).collect();
        let child = if d.age + 1 >= n {
            self.dict(basis)?
        } else {
            self.dict_with_inverse(basis, inv.select_columns(&order), d.age + 1)
        };
        let q = child.basis.binary_search(&j).ok()?;
        (self.lex_entering(&child, q) == Some(leaving)).then_some(child)
    }

    /// A vertex is reported only from the smallest lexicographically
    /// feasible basis among its tight constraints.
    fn is_canonical(&self, d: &Dict) -> bool {
        let tight: Vec<usize> = (0..self.num_constraints())
            .filter(|&j| d.slack[j].abs() <= self.tol.eq_tol || d.basis.binary_search(&j).is_ok())
            .collect();
        if tight.len() == self.dim() {
            return true;
        }
        for comb in tight.into_iter().combinations(self.dim()) {
            if comb == d.basis {
                return true;
            }
            if let Some(other) = self.dict(comb) {
                if self.lex_feasible(&other) {
                    return false;
                }
            }
        }
        true
    }

    fn report(&self, d: &Dict) -> Option<Vertex> {
        if !self.is_canonical(d) {
            return None;
        }
        Some(self.vertex_at(d.x.clone()).unwrap_or_else(|| Vertex {
            point: d.x.clone(),
            tight_set: d.basis.clone(),
            defining_basis: d.basis.clone(),
        }))
    }
}

impl VertexEnumeration<'_> {
    /// Number of lexicographically feasible bases visited so far.
    pub fn bases_visited(&self) -> usize {
        self.visited
    }
}

impl Iterator for VertexEnumeration<'_> {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        let poly = self.poly;
        loop {
            let dict = if let Some(root) = self.root.take() {
                root
            } else {
                let frame = self.stack.last_mut()?;
                if frame.next == poly.dim() {
                    self.stack.pop();
                    continue;
                }
                let p = frame.next;
                frame.next += 1;
                match poly.child(&frame.dict, p, &self.objective) {
                    Some(c) => c,
                    None => continue,
                }
            };
            self.visited += 1;
            let vertex = poly.report(&dict);
            self.stack.push(Frame { dict, next: 0 });
            if vertex.is_some() {
                return vertex;
            }
        }
    }
}
