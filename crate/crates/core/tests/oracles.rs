mod common;

use common::{c, displacement_matrix, gaussian_smooth};
use nlcs_core::phasespace::{
    displace_state, displaced_number_overlaps, field_over_grid, husimi, husimi_closed_a, husimi_closed_d,
    husimi_pacs_closed, wigner, DisplacedNumberBasis, FieldKind, FieldSource, PhaseSpaceGrid,
};
use nlcs_core::states::{self, add_photons};
use nlcs_core::stats::{closed_form_distribution_a, closed_form_distribution_d, photon_distribution};
use nlcs_core::{Complex64, DeformedLadder, FockState, KerrParams, StateSpec, Tolerances};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn kerr(k: f64) -> KerrParams {
    KerrParams::new(k).unwrap()
}

#[test]
fn displacement_elements_match_matrix_exponential() {
    let n = 200;
    for alpha in [
        Complex64::new(0.7, 0.0),
        Complex64::new(-1.2, 0.8),
        Complex64::new(0.3, -2.1),
    ] {
        let d = displacement_matrix(alpha, n);
        let basis = DisplacedNumberBasis::new(alpha, 60, 30);
        for row in 0..60 {
            for k in 0..30 {
                let diff = (basis.element(row, k) - d.get(row, k)).norm();
                assert!(diff < 1e-8, "alpha={alpha} n={row} k={k}: {diff}");
            }
        }
    }
}

#[test]
fn overlaps_match_matrix_exponential() {
    let n = 200;
    let alpha = Complex64::new(0.9, -0.6);
    let psi = states::dpancs_a(c(1.1), 1, kerr(0.15), 1).unwrap();
    let d = displacement_matrix(alpha, n);
    let ov = displaced_number_overlaps(alpha, &psi, 25);
    for (k, o) in ov.iter().enumerate() {
        let oracle: Complex64 = psi
            .coefficients()
            .iter()
            .enumerate()
            .map(|(row, cn)| d.get(row, k).conj() * cn)
            .sum();
        assert!((o - oracle).norm() < 1e-8, "k={k}");
    }
}

#[test]
fn overlaps_at_zero_displacement_are_coefficients() {
    let psi = states::docs(c(0.8), kerr(0.3), 1).unwrap();
    let ov = displaced_number_overlaps(c(0.0), &psi, psi.dim() - 1);
    for (o, cn) in ov.iter().zip(psi.coefficients()) {
        assert_eq!(o, cn);
    }
}

#[test]
fn photon_added_constructors_match_operator_application() {
    for kappa in [0.05, 0.15, 0.5] {
        for alpha in [0.1, 0.5, 1.1, 3.0] {
            for m in [1u32, 4] {
                let p = kerr(kappa);
                let a = states::dpancs_a(c(alpha), m, p, 1).unwrap();
                let base = states::nlcs_eigenstate(c(alpha), p, a.dim() + 8).unwrap();
                let ladder = DeformedLadder::new(p, base.dim());
                let oracle = add_photons(&base, m, &ladder).unwrap();
                for (k, x) in a.coefficients().iter().enumerate() {
                    assert!((x - oracle.coefficients()[k]).norm() < 1e-10, "A k={k}");
                }
            }
        }
    }
}

#[test]
fn closed_distributions_match_constructors() {
    let p = kerr(0.1);
    let a = states::dpancs_a(c(3.0), 1, p, 1).unwrap();
    let d = states::dpancs_d(c(3.0), 1, p, 1).unwrap();
    let ca = closed_form_distribution_a(c(3.0), 1, p, a.dim() - 1).unwrap();
    let cd = closed_form_distribution_d(c(3.0), 1, p, d.dim() - 1).unwrap();
    for (x, y) in photon_distribution(&a).probabilities.iter().zip(&ca.probabilities) {
        assert!((x - y).abs() < 1e-10);
    }
    for (x, y) in photon_distribution(&d).probabilities.iter().zip(&cd.probabilities) {
        assert!((x - y).abs() < 1e-10);
    }
}

#[test]
fn pacs_husimi_closed_form_matches_generic() {
    let a = Complex64::new(1.3, 0.4);
    let s = states::pacs(a, 2, 1).unwrap();
    let tol = Tolerances::default();
    for z in [
        c(0.0),
        Complex64::new(1.0, 1.0),
        Complex64::new(-2.0, 0.5),
        Complex64::new(3.0, -3.0),
    ] {
        let g = husimi(&s, z, &tol).unwrap();
        let f = husimi_pacs_closed(a, 2, z).unwrap();
        assert!((g - f).abs() < 1e-12, "z={z}");
    }
}

#[test]
fn deformed_husimi_closed_forms_match_generic() {
    let p = kerr(0.15);
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let a = states::dpancs_a(c(1.1), 1, p, 1).unwrap();
    let d = states::dpancs_d(c(1.1), 1, p, 1).unwrap();
    for _ in 0..20 {
        let z = Complex64::new(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0));
        assert!((husimi(&a, z, &tol).unwrap() - husimi_closed_a(c(1.1), 1, p, z).unwrap()).abs() < 1e-10);
        assert!((husimi(&d, z, &tol).unwrap() - husimi_closed_d(c(1.1), 1, p, z).unwrap()).abs() < 1e-10);
    }
}

#[test]
fn wigner_is_displacement_covariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let psi = states::dpancs_a(c(1.1), 1, kerr(0.15), 1).unwrap();
    for _ in 0..3 {
        let gamma = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let alpha = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let shifted = displace_state(&psi, gamma, 120).unwrap();
        let lhs = wigner(&shifted, alpha, 4096).unwrap();
        let rhs = wigner(&psi, alpha - gamma, 4096).unwrap();
        assert!((lhs - rhs).abs() < 1e-8, "gamma={gamma} alpha={alpha}");
    }
}

#[test]
fn smoothed_wigner_reproduces_husimi() {
    let grid = PhaseSpaceGrid::square(-4.0, 4.0, 81).unwrap();
    let tol = Tolerances::default();
    for state in [
        states::coherent(c(1.0), 1).unwrap(),
        states::dpancs_a(c(1.1), 1, kerr(0.15), 1).unwrap(),
    ] {
        let src = FieldSource::State(state);
        let w = field_over_grid(FieldKind::Wigner, &src, &grid, &tol).unwrap();
        let q = field_over_grid(FieldKind::Husimi, &src, &grid, &tol).unwrap();
        let smoothed = gaussian_smooth(&w.values, grid.nx, grid.ny, grid.dx(), grid.dy());
        let worst = smoothed
            .iter()
            .zip(&q.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-3, "{worst}");
    }
}

#[test]
fn grid_evaluation_is_independent_of_thread_count() {
    let grid = PhaseSpaceGrid::square(-2.0, 2.0, 21).unwrap();
    let src = FieldSource::State(states::dpancs_d(c(1.1), 1, kerr(0.15), 1).unwrap());
    let tol = Tolerances::default();
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| field_over_grid(FieldKind::Wigner, &src, &grid, &tol).unwrap())
    };
    let one = run(1);
    let many = run(4);
    assert!(one
        .values
        .iter()
        .zip(&many.values)
        .all(|(a, b)| a.to_bits() == b.to_bits()));
}

fn any_spec() -> impl Strategy<Value = StateSpec> {
    (0usize..6, 0.05f64..2.5, 0u32..4, 0.05f64..0.6).prop_map(|(f, a, m, k)| {
        let alpha = c(a);
        let p = kerr(k);
        match f {
            0 => StateSpec::coherent(alpha),
            1 => StateSpec::pacs(alpha, m),
            2 => StateSpec::nlcs(alpha, p),
            3 => StateSpec::docs(alpha, p),
            4 => StateSpec::dpancs_a(alpha, m, p),
            _ => StateSpec::dpancs_d(alpha, m, p),
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn constructors_are_phase_covariant(spec in any_spec(), theta in -3.0f64..3.0) {
        let tol = Tolerances::default();
        let s = spec.build(1, &tol).unwrap();
        let rotated = StateSpec { alpha: spec.alpha * Complex64::from_polar(1.0, theta), ..spec };
        let r = rotated.build(s.dim(), &tol).unwrap();
        let m = spec.m as usize;
        for (k, (x, y)) in s.coefficients().iter().zip(r.coefficients()).enumerate() {
            prop_assert!((x.norm() - y.norm()).abs() < 1e-13);
            if k >= m && x.norm() > 1e-8 {
                let expect = x * Complex64::from_polar(1.0, (k - m) as f64 * theta);
                prop_assert!((expect - y).norm() < 1e-10 * x.norm().max(1e-3));
            }
        }
    }

    #[test]
    fn constructors_are_normalized_and_empty_below_m(spec in any_spec()) {
        let s = spec.build(1, &Tolerances::default()).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
        for k in 0..spec.m as usize {
            prop_assert_eq!(s.coefficients()[k], c(0.0));
        }
    }

    #[test]
    fn phase_space_bounds_hold(spec in any_spec(), x in -4.0f64..4.0, y in -4.0f64..4.0) {
        let tol = Tolerances::default();
        let s: FockState = spec.build(1, &tol).unwrap();
        let z = Complex64::new(x, y);
        let q = husimi(&s, z, &tol).unwrap();
        prop_assert!((-1e-12..=std::f64::consts::FRAC_1_PI + 1e-12).contains(&q));
        let w = wigner(&s, z, 4096).unwrap();
        prop_assert!(w.abs() <= std::f64::consts::FRAC_2_PI + 1e-12);
    }
}
