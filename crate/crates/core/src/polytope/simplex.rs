use nalgebra::{DMatrix, DVector};

use super::{LpOutcome, LpStatus, Polytope};
use crate::gram::rank1_update_inverse;
use crate::linalg;

const PIVOT_TOL: f64 = 1e-12;
const TIE_TOL: f64 = 1e-12;

impl Polytope<'_> {
    /// Maximize `c·x` over the polytope.
    ///
    /// Primal simplex on the inequality form, walking from the origin (which
    /// is always feasible) to a vertex and then along edges. Pricing is
    /// Dantzig's rule, switching to Bland's rule after a run of degenerate
    /// pivots; ratio-test ties go to the smallest constraint index.
    pub fn solve_lp(&self, c: &DVector<f64>) -> LpOutcome {
        let n = self.dim();
        let s = self.set.matrix();
        let tol = &self.tol;
        let c_scale = c.norm().max(f64::MIN_POSITIVE);

        let lineality = linalg::null_space(&s.transpose(), tol.rank_tol);
        let fixed = lineality.ncols();
        if fixed > 0 && (lineality.tr_mul(c)).norm() > tol.eq_tol * c_scale {
            return unbounded(0);
        }

        // phase A: grow a set of tight constraints until they pin a vertex
        let mut x = DVector::zeros(n);
        let mut working: Vec<usize> = Vec::with_capacity(n);
        let mut pivots = 0usize;
        while working.len() + fixed < n {
            let mut rows = DMatrix::zeros(working.len() + fixed, n);
            for (r, &j) in working.iter().enumerate() {
                rows.set_row(r, &s.column(j).transpose());
            }
            for f in 0..fixed {
                rows.set_row(working.len() + f, &lineality.column(f).transpose());
            }
            let ns = linalg::null_space(&rows, tol.rank_tol);
            let proj = &ns * ns.tr_mul(c);
            let mut dirs = Vec::with_capacity(2);
            if proj.norm() > tol.eq_tol * c_scale {
                dirs.push(proj);
            } else {
                let d = ns.column(0).into_owned();
                dirs.push(-&d);
                dirs.push(d);
            }
            let mut moved = false;
            for d in dirs {
                match self.ratio_test(&x, &d, &working) {
                    Some((j, t)) => {
                        x.axpy(t, &d, 1.0);
                        working.push(j);
                        pivots += 1;
                        moved = true;
                        break;
                    }
                    None if c.dot(&d) > tol.eq_tol * c_scale => return unbounded(pivots),
                    None => {}
                }
            }
            if !moved {
                return unbounded(pivots);
            }
        }

        // phase B: edge walk between adjacent vertices
        let mut basis_matrix = DMatrix::zeros(n, n);
        for (r, &j) in working.iter().enumerate() {
            basis_matrix.set_row(r, &s.column(j).transpose());
        }
        for f in 0..fixed {
            basis_matrix.set_row(working.len() + f, &lineality.column(f).transpose());
        }
        let mut rhs = DVector::zeros(n);
        rhs.rows_mut(0, working.len()).fill(1.0);
        let Some(mut inv) = basis_matrix.clone().try_inverse() else {
            return unbounded(pivots);
        };
        x = &inv * &rhs;

        let m = working.len();
        let price_tol = tol.eq_tol * c_scale;
        let max_pivots = 50 * (self.num_constraints() + n) + 1000;
        let mut bland = false;
        let mut degenerate_run = 0usize;
        let mut since_refactor = 0usize;
        while pivots < max_pivots {
            let lambda = inv.tr_mul(c);
            let leave = if bland {
                (0..m)
                    .filter(|&p| lambda[p] < -price_tol)
                    .min_by_key(|&p| working[p])
            } else {
                (0..m).filter(|&p| lambda[p] < -price_tol).min_by(|&a, &b| {
                    lambda[a]
                        .total_cmp(&lambda[b])
                        .then(working[a].cmp(&working[b]))
                })
            };
            let Some(p) = leave else {
                break;
            };
            let d = -inv.column(p).into_owned();
            let Some((j, t)) = self.ratio_test(&x, &d, &working) else {
                return unbounded(pivots);
            };
            if t <= tol.eq_tol {
                degenerate_run += 1;
                if degenerate_run > 2 * n {
                    bland = true;
                }
            } else {
                degenerate_run = 0;
            }
            let new_row = s.column(j).into_owned();
            let delta = &new_row - s.column(working[p]);
            basis_matrix.set_row(p, &new_row.transpose());
            working[p] = j;
            pivots += 1;
            since_refactor += 1;
            let mut e_p = DVector::zeros(n);
            e_p[p] = 1.0;
            let updated = if since_refactor < n {
                rank1_update_inverse(&inv, &e_p, &delta, tol.rank_tol).ok()
            } else {
                None
            };
            inv = match updated {
                Some(u) => u,
                None => {
                    since_refactor = 0;
                    match basis_matrix.clone().try_inverse() {
                        Some(i) => i,
                        None => return unbounded(pivots),
                    }
                }
            };
            x = &inv * &rhs;
        }

        let objective = c.dot(&x);
        let vertex = if fixed == 0 { self.vertex_at(x) } else { None };
        LpOutcome {
            status: LpStatus::Optimal,
            objective,
            vertex,
            pivots,
        }
    }

    /// Minimum-ratio step from `x` along `d`: the first constraint outside
    /// `skip` to become tight, smallest index on ties.
    fn ratio_test(
        &self,
        x: &DVector<f64>,
        d: &DVector<f64>,
        skip: &[usize],
    ) -> Option<(usize, f64)> {
        let ax = self.set.dots(x);
        let ad = self.set.dots(d);
        let mut best: Option<(usize, f64)> = None;
        for j in 0..self.num_constraints() {
            if ad[j] <= PIVOT_TOL || skip.contains(&j) {
                continue;
            }
            let t = (1.0 - ax[j]).max(0.0) / ad[j];
            match best {
                Some((_, bt)) if t >= bt - TIE_TOL => {}
                _ => best = Some((j, t)),
            }
        }
        best
    }
}

fn unbounded(pivots: usize) -> LpOutcome {
    LpOutcome {
        status: LpStatus::Unbounded,
        objective: f64::INFINITY,
        vertex: None,
        pivots,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::build_polytope;
    use crate::tolerance::Tolerances;
    use crate::vectors::normalize_set;

    fn poly_of(raw: &[&[f64]]) -> crate::vectors::VectorSet {
        let v: Vec<Vec<f64>> = raw.iter().map(|r| r.to_vec()).collect();
        normalize_set(&v, &Tolerances::default()).unwrap()
    }

    #[test]
    fn square_diagonal_objective() {
        let s = poly_of(&[&[1.0, 0.0], &[-1.0, 0.0], &[0.0, 1.0], &[0.0, -1.0]]);
        let p = build_polytope(&s, &Tolerances::default());
        let out = p.solve_lp(&DVector::from_vec(vec![1.0, 1.0]));
        assert_eq!(out.status, LpStatus::Optimal);
        assert!((out.objective - 2.0).abs() < 1e-12);
        let v = out.vertex.unwrap();
        assert!((v.point[0] - 1.0).abs() < 1e-12 && (v.point[1] - 1.0).abs() < 1e-12);
        assert_eq!(v.tight_set, vec![0, 2]);
    }

    #[test]
    fn half_space_is_unbounded() {
        let s = poly_of(&[&[1.0, 0.0]]);
        let p = build_polytope(&s, &Tolerances::default());
        let out = p.solve_lp(&DVector::from_vec(vec![-1.0, 0.0]));
        assert_eq!(out.status, LpStatus::Unbounded);
        let out = p.solve_lp(&DVector::from_vec(vec![1.0, 0.0]));
        assert_eq!(out.status, LpStatus::Optimal);
        assert!((out.objective - 1.0).abs() < 1e-12);
        assert!(out.vertex.is_none());
        let out = p.solve_lp(&DVector::from_vec(vec![1.0, 1.0]));
        assert_eq!(out.status, LpStatus::Unbounded);
    }

    #[test]
    fn triangle_vertices() {
        let h = 0.75f64.sqrt();
        let s = poly_of(&[&[1.0, 0.0], &[-0.5, h], &[-0.5, -h]]);
        let p = build_polytope(&s, &Tolerances::default());
        let out = p.solve_lp(&DVector::from_vec(vec![-1.0, 0.0]));
        let v = out.vertex.unwrap();
        assert!((v.point[0] + 2.0).abs() < 1e-12);
        assert!(v.point[1].abs() < 1e-12);
        assert_eq!(v.tight_set, vec![1, 2]);
    }

    #[test]
    fn degenerate_octahedron_vertex() {
        // apex of a square pyramid: four tight facets in R^3
        let s = poly_of(&[
            &[1.0, 0.0, 1.0],
            &[-1.0, 0.0, 1.0],
            &[0.0, 1.0, 1.0],
            &[0.0, -1.0, 1.0],
            &[0.0, 0.0, -1.0],
        ]);
        let p = build_polytope(&s, &Tolerances::default());
        let out = p.solve_lp(&DVector::from_vec(vec![0.1, 0.2, 1.0]));
        let v = out.vertex.unwrap();
        let r = 2f64.sqrt();
        assert!((v.point[2] - r).abs() < 1e-12, "{}", v.point);
        assert_eq!(v.tight_set, vec![0, 1, 2, 3]);
        assert_eq!(v.defining_basis, vec![0, 1, 2]);
    }
}
