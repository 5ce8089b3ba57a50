use cosmeasure::generators::{
    augment, generate, maximal_delta_shift, minimal_delta_shift, optimal_orthogonal, permute,
    rotate, Family, GeneratorSpec,
};
use cosmeasure::polytope::build_polytope;
use cosmeasure::solvers::{basis_enumeration, vertex_enum_solver, SolverConfig};
use cosmeasure::{is_positive_spanning, Tolerances};

#[test]
fn shift_families_decrease_in_delta() {
    for n in 2..=8 {
        let grid: Vec<f64> = (0..50).map(|i| i as f64 / (50.0 * n as f64)).collect();
        for family in [Family::MinDeltaShift, Family::MaxDeltaShift] {
            let values: Vec<f64> = grid
                .iter()
                .map(|&d| {
                    GeneratorSpec::new(family, n)
                        .with_delta(d)
                        .known_cm()
                        .unwrap()
                        .unwrap()
                })
                .collect();
            assert!(values.windows(2).all(|w| w[1] < w[0]), "{family} n={n}");
        }
        let nf = n as f64;
        assert_eq!(
            minimal_delta_shift(n, 0.0).unwrap().known_cm,
            Some(1.0 / nf)
        );
        assert_eq!(
            maximal_delta_shift(n, 0.0).unwrap().known_cm,
            Some(1.0 / nf.sqrt())
        );
    }
}

#[test]
fn generated_sets_positively_span() {
    let tol = Tolerances::default();
    for n in 2..=6 {
        for spec in cosmeasure::testset_io::benchmark_grid(&[n], 3) {
            let case = generate(&spec).unwrap();
            assert!(is_positive_spanning(&case.set, &tol), "{spec:?}");
        }
    }
}

#[test]
fn optimal_orthogonal_vertices_have_equal_norm() {
    for n in 2..=6 {
        for s in n + 1..=2 * n {
            let case = optimal_orthogonal(n, s).unwrap();
            let p = build_polytope(&case.set, &Tolerances::default());
            let norms: Vec<f64> = p
                .enumerate_vertices()
                .unwrap()
                .map(|v| v.point.norm())
                .collect();
            let (lo, hi) = norms
                .iter()
                .fold((f64::MAX, f64::MIN), |(a, b), &x| (a.min(x), b.max(x)));
            assert!(hi - lo < 1e-9, "n={n} s={s}");
            assert!((1.0 / hi - case.known_cm.unwrap()).abs() < 1e-12);
        }
    }
}

#[test]
fn augmentation_keeps_the_cosine_measure() {
    let cfg = SolverConfig::default();
    let base = minimal_delta_shift(3, 1.0 / 6.0).unwrap();
    let aug = augment(&base, 9, 21).unwrap();
    let value = basis_enumeration(&aug.set, &cfg).unwrap().result.value;
    assert!((value - base.known_cm.unwrap()).abs() < 1e-9);

    let rotated = permute(&rotate(&base, 4), 5);
    let mut no_vector = rotated.clone();
    no_vector.cosine_vector = None;
    let aug = augment(&no_vector, 9, 6).unwrap();
    let value = vertex_enum_solver(&aug.set, &cfg).unwrap().result.value;
    assert!((value - base.known_cm.unwrap()).abs() < 1e-9);
}

#[test]
fn canonical_minimal_survives_rotation() {
    let case = cosmeasure::generators::canonical_minimal(4).unwrap();
    let moved = permute(&rotate(&case, 77), 78);
    let value = basis_enumeration(&moved.set, &SolverConfig::default())
        .unwrap()
        .result
        .value;
    assert!((value - case.known_cm.unwrap()).abs() < 1e-9);
}
