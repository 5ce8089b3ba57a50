mod common;

use cosmeasure::generators::{permute, random_rotation, rotate, TestCase};
use cosmeasure::solvers::{random_lp_solver, vertex_enum_solver, SolverConfig};
use cosmeasure::{
    cosine_along, gram_matrix, gram_vector, normalize_set, rank1_update_inverse, Tolerances,
    VectorSet,
};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

use common::random_spanning_set;

fn gaussian_columns(n: usize, k: usize) -> impl Strategy<Value = DMatrix<f64>> {
    prop::collection::vec(-1.0f64..1.0, n * k).prop_map(move |v| DMatrix::from_vec(n, k, v))
}

fn well_conditioned_basis() -> impl Strategy<Value = VectorSet> {
    (2usize..=8)
        .prop_flat_map(|n| gaussian_columns(n, n))
        .prop_filter_map("ill-conditioned", |m| {
            let sv = m.singular_values();
            (sv.min() > 1e-2 * sv.max())
                .then(|| VectorSet::from_matrix(m, &Tolerances::default()).ok())?
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn gram_value_matches_explicit_inverse(set in well_conditioned_basis()) {
        let n = set.dim();
        let idx: Vec<usize> = (0..n).collect();
        let g = gram_vector(&set, &idx, &Tolerances::default()).unwrap();
        let inv = gram_matrix(&set, &idx).try_inverse().unwrap();
        let e = DVector::repeat(n, 1.0);
        let explicit = 1.0 / e.dot(&(inv * &e)).sqrt();
        prop_assert!((g.gram_value - explicit).abs() < 1e-10);
        // every basis vector makes the same angle with the Gram vector
        for d in set.vectors() {
            prop_assert!((d.dot(&g.gram_vector) - g.gram_value).abs() < 1e-10);
        }
    }

    #[test]
    fn gram_vector_ignores_basis_order(set in well_conditioned_basis(), seed in any::<u64>()) {
        let n = set.dim();
        let idx: Vec<usize> = (0..n).collect();
        let mut shuffled = idx.clone();
        let rot = seed as usize;
        shuffled.rotate_left(rot % n);
        shuffled.swap(0, n - 1);
        let tol = Tolerances::default();
        let a = gram_vector(&set, &idx, &tol).unwrap();
        let b = gram_vector(&set, &shuffled, &tol).unwrap();
        prop_assert!((a.gram_value - b.gram_value).abs() < 1e-10);
        prop_assert!((a.gram_vector - b.gram_vector).amax() < 1e-9);
    }

    #[test]
    fn rank_one_update_matches_direct_inverse(
        n in 2usize..=8,
        entries in prop::collection::vec(-1.0f64..1.0, 64 + 16),
    ) {
        let a = DMatrix::from_fn(n, n, |i, j| entries[i * 8 + j] + if i == j { 3.0 } else { 0.0 });
        let u = DVector::from_fn(n, |i, _| entries[64 + i]);
        let v = DVector::from_fn(n, |i, _| entries[72 + i]);
        let a_inv = a.clone().try_inverse().unwrap();
        let denom = 1.0 + v.dot(&(&a_inv * &u));
        prop_assume!(denom.abs() > 1e-3);
        let updated = rank1_update_inverse(&a_inv, &u, &v, 1e-10).unwrap();
        let direct = (a + &u * v.transpose()).try_inverse().unwrap();
        prop_assert!((&updated - &direct).norm() <= 1e-9 * direct.norm());
    }

    #[test]
    fn normalization_is_idempotent(m in gaussian_columns(3, 5)) {
        let raw: Vec<Vec<f64>> = m.column_iter().map(|c| c.iter().copied().collect()).collect();
        prop_assume!(raw.iter().all(|c| c.iter().any(|x| x.abs() > 1e-3)));
        let tol = Tolerances::default();
        let once = normalize_set(&raw, &tol).unwrap();
        let twice = VectorSet::from_matrix(once.matrix().clone(), &tol).unwrap();
        prop_assert!((once.matrix() - twice.matrix()).amax() < 1e-15);
        for v in once.vectors() {
            prop_assert!((v.norm() - 1.0).abs() < 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn no_direction_beats_the_cosine_measure(
        n in 2usize..=4,
        extra in 1usize..=5,
        seed in any::<u64>(),
        dir in prop::collection::vec(-1.0f64..1.0, 4),
    ) {
        let set = random_spanning_set(n, extra, seed);
        let cm = vertex_enum_solver(&set, &SolverConfig::default()).unwrap().result.value;
        let v = DVector::from_fn(n, |i, _| dir[i]);
        prop_assume!(v.norm() > 1e-3);
        let (value, _) = cosine_along(&set, &v.normalize(), &Tolerances::default());
        prop_assert!(value >= cm - 1e-9);
    }

    #[test]
    fn random_lp_never_undershoots(n in 2usize..=4, extra in 1usize..=5, seed in any::<u64>()) {
        let set = random_spanning_set(n, extra, seed);
        let exact = vertex_enum_solver(&set, &SolverConfig::default()).unwrap().result.value;
        let cfg = SolverConfig { lp_iterations: 5, rng_seed: seed, ..Default::default() };
        let heuristic = random_lp_solver(&set, &cfg).unwrap().result;
        prop_assert!(heuristic.value >= exact - 1e-8);
        prop_assert!(heuristic.stats.trace.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn rotation_and_permutation_preserve_value(n in 2usize..=4, extra in 1usize..=4, seed in any::<u64>()) {
        let case = TestCase::new(random_spanning_set(n, extra, seed));
        let moved = permute(&rotate(&case, seed ^ 1), seed ^ 2);
        let cfg = SolverConfig::default();
        let a = vertex_enum_solver(&case.set, &cfg).unwrap().result.value;
        let b = vertex_enum_solver(&moved.set, &cfg).unwrap().result.value;
        prop_assert!((a - b).abs() < 1e-9);
        let q = random_rotation(n, seed);
        prop_assert!((q.tr_mul(&q) - DMatrix::identity(n, n)).amax() < 1e-12);
    }
}
