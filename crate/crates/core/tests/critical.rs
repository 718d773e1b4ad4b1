use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use proptest::prelude::*;
use zprime_core::critical::{
    containing_gap, critical_points, critical_points_oracle, log_derivative, nearest_gap,
    residual_tolerance,
};
use zprime_core::haar::sample_eigenphases;
use zprime_core::matching::matching_distance;
use zprime_core::{EigenPhaseSpectrum, Error};

fn spec(p: &[f64]) -> EigenPhaseSpectrum {
    EigenPhaseSpectrum::from_unsorted(p.iter().copied()).unwrap()
}

#[test]
fn log_derivative_examples() {
    let z = log_derivative(&spec(&[0.0, PI]), Complex64::new(0.0, 0.0)).unwrap();
    assert!(z.norm() < 1e-15);
    let z = log_derivative(&spec(&[0.0]), Complex64::new(2.0, 0.0)).unwrap();
    assert!((z - 1.0).norm() < 1e-15);
    let s = sample_eigenphases(17, 3).unwrap();
    let far = Complex64::from_polar(1e3, 0.7);
    let v = log_derivative(&s, far).unwrap();
    assert!((v - 17.0 / far).norm() <= 0.01 * (17.0 / far).norm());
    assert!(matches!(
        log_derivative(&s, s.eigenvalues()[4]),
        Err(Error::Pole(_))
    ));
}

#[test]
fn two_point_spectrum() {
    for cps in [
        critical_points(&spec(&[0.0, PI])).unwrap(),
        critical_points_oracle(&spec(&[0.0, PI])).unwrap(),
    ] {
        assert_eq!(cps.len(), 1);
        assert!(cps.points()[0].norm() < 1e-14);
    }
}

#[test]
fn cube_roots_give_double_point() {
    let cps = critical_points(&spec(&[0.0, TAU / 3.0, 2.0 * TAU / 3.0])).unwrap();
    assert_eq!(cps.len(), 2);
    assert!(cps.points().iter().all(|z| z.norm() < 1e-7));
    assert_eq!(cps.multiplicity(), &[2, 2]);
}

#[test]
fn quadratic_closed_form() {
    let root2 = 2f64.sqrt();
    let expected = [
        Complex64::new(root2, 1.0) / 3.0,
        Complex64::new(-root2, 1.0) / 3.0,
    ];
    let s = spec(&[0.0, FRAC_PI_2, PI]);
    for cps in [
        critical_points(&s).unwrap(),
        critical_points_oracle(&s).unwrap(),
    ] {
        assert!(matching_distance(cps.points(), &expected) < 1e-14);
        for z in cps.points() {
            assert!((z.norm() - 3f64.sqrt() / 3.0).abs() < 1e-14);
        }
    }
}

#[test]
fn random_spectrum_matches_oracle() {
    let s = sample_eigenphases(10, 2024).unwrap();
    let a = critical_points(&s).unwrap();
    let b = critical_points_oracle(&s).unwrap();
    assert!(matching_distance(a.points(), b.points()) <= 1e-8);
}

#[test]
fn preconditions() {
    assert!(matches!(
        critical_points(&spec(&[1.0])),
        Err(Error::Precondition(_))
    ));
    assert!(matches!(
        critical_points(&spec(&[1.0, 1.0, 2.0])),
        Err(Error::Precondition(_))
    ));
    assert!(matches!(
        critical_points_oracle(&spec(&[1.0])),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn large_n_residuals() {
    let s = sample_eigenphases(400, 1).unwrap();
    let cps = critical_points(&s).unwrap();
    assert_eq!(cps.len(), 399);
    assert!(cps.max_residual() <= residual_tolerance(400));
    assert!(cps.points().iter().all(|z| z.norm() < 1.0));
}

#[test]
fn points_sit_in_their_nearest_gap() {
    let mut total = 0;
    let mut agree = 0;
    for seed in 0..200 {
        let s = sample_eigenphases(50, seed).unwrap();
        for z in critical_points(&s).unwrap().points() {
            total += 1;
            if nearest_gap(&s, *z) == containing_gap(&s, *z) {
                agree += 1;
            }
        }
    }
    let fraction = agree as f64 / total as f64;
    assert!(
        fraction > 0.9,
        "nearest and containing gap agree for {fraction}"
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn count_containment_and_oracle(n in 2usize..=12, seed in any::<u64>()) {
        let s = sample_eigenphases(n, seed).unwrap();
        let cps = critical_points(&s).unwrap();
        prop_assert_eq!(cps.len(), n - 1);
        prop_assert!(cps.points().iter().all(|z| z.norm() < 1.0));
        prop_assert!(cps.residuals().iter().all(|r| *r <= residual_tolerance(n)));
        let oracle = critical_points_oracle(&s).unwrap();
        prop_assert!(matching_distance(cps.points(), oracle.points()) <= 1e-8);
    }

    #[test]
    fn rotation_equivariance(n in 2usize..=50, seed in any::<u64>(), phi in 0.0..TAU) {
        let s = sample_eigenphases(n, seed).unwrap();
        let rotated: Vec<Complex64> = critical_points(&s)
            .unwrap()
            .points()
            .iter()
            .map(|z| z * Complex64::from_polar(1.0, phi))
            .collect();
        let direct = critical_points(&s.rotated(phi)).unwrap();
        prop_assert!(matching_distance(&rotated, direct.points()) <= 1e-8);
    }

    #[test]
    fn conjugation_symmetry(n in 2usize..=50, seed in any::<u64>()) {
        let s = sample_eigenphases(n, seed).unwrap();
        let conj: Vec<Complex64> = critical_points(&s).unwrap().points().iter().map(|z| z.conj()).collect();
        let direct = critical_points(&s.reflected()).unwrap();
        prop_assert!(matching_distance(&conj, direct.points()) <= 1e-8);
    }

    #[test]
    fn far_field_log_derivative(n in 1usize..=40, seed in any::<u64>(), arg in 0.0..TAU) {
        let s = sample_eigenphases(n, seed).unwrap();
        let z = Complex64::from_polar(1e3, arg);
        let v = log_derivative(&s, z).unwrap();
        prop_assert!((v - n as f64 / z).norm() <= 0.01 * n as f64 / 1e3);
    }
}
