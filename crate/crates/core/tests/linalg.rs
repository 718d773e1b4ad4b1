use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use proptest::prelude::*;
use zprime_core::haar::{sample_ginibre, sample_haar_unitary};
use zprime_core::linalg::{
    determinant, eigenphases, eigenvalues, householder_qr, ComplexDenseMatrix,
};
use zprime_core::Error;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn cofactor_det(a: &ComplexDenseMatrix) -> Complex64 {
    let n = a.rows();
    if n == 1 {
        return a[(0, 0)];
    }
    (0..n)
        .map(|j| {
            let minor = ComplexDenseMatrix::from_fn(n - 1, n - 1, |r, k| {
                a[(r + 1, if k < j { k } else { k + 1 })]
            });
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            a[(0, j)] * cofactor_det(&minor) * sign
        })
        .sum()
}

fn check_qr(a: &ComplexDenseMatrix) {
    let n = a.rows();
    let (q, r) = householder_qr(a).unwrap();
    assert!(q.unitarity_defect() <= 1e-12 * n as f64);
    for i in 0..n {
        for j in 0..i {
            assert_eq!(r[(i, j)], c(0.0, 0.0));
        }
    }
    let qr = q.matmul(&r).unwrap();
    assert!(qr.max_abs_diff(a) <= 1e-12 * n as f64 * a.max_abs());
}

#[test]
fn qr_identity() {
    let (q, r) = householder_qr(&ComplexDenseMatrix::identity(3)).unwrap();
    for j in 0..3 {
        assert!((q[(j, j)].norm() - 1.0).abs() < 1e-15);
        assert!((r[(j, j)].norm() - 1.0).abs() < 1e-15);
    }
    assert!(
        q.matmul(&r)
            .unwrap()
            .max_abs_diff(&ComplexDenseMatrix::identity(3))
            < 1e-15
    );
}

#[test]
fn qr_diagonal() {
    let (_, r) = householder_qr(&ComplexDenseMatrix::from_diagonal(&[
        c(2.0, 0.0),
        c(3.0, 0.0),
    ]))
    .unwrap();
    assert!((r[(0, 0)].norm() - 2.0).abs() < 1e-15);
    assert!((r[(1, 1)].norm() - 3.0).abs() < 1e-15);
}

#[test]
fn qr_ginibre_reconstruction() {
    check_qr(&sample_ginibre(5, 7));
}

#[test]
fn qr_rejects_non_square() {
    let a = ComplexDenseMatrix::zeros(2, 3);
    assert!(matches!(householder_qr(&a), Err(Error::Dimension(_))));
}

#[test]
fn eigenphases_identity() {
    let s = eigenphases(&ComplexDenseMatrix::identity(4)).unwrap();
    assert_eq!(s.phases(), &[0.0; 4]);
}

#[test]
fn eigenphases_diagonal() {
    let s = eigenphases(&ComplexDenseMatrix::from_diagonal(&[
        c(1.0, 0.0),
        c(0.0, 1.0),
    ]))
    .unwrap();
    assert!(s.phases()[0].abs() < 1e-15);
    assert!((s.phases()[1] - FRAC_PI_2).abs() < 1e-15);
}

#[test]
fn eigenphases_permutation() {
    let p = ComplexDenseMatrix::new(
        2,
        2,
        vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
    )
    .unwrap();
    let s = eigenphases(&p).unwrap();
    assert!(s.phases()[0].abs() < 1e-14);
    assert!((s.phases()[1] - PI).abs() < 1e-14);
}

#[test]
fn eigenphases_rejects_non_unitary() {
    let a = ComplexDenseMatrix::from_diagonal(&[c(1.0, 0.0), c(2.0, 0.0)]);
    assert!(matches!(eigenphases(&a), Err(Error::Precondition(_))));
    assert!(matches!(
        eigenphases(&ComplexDenseMatrix::zeros(2, 3)),
        Err(Error::Dimension(_))
    ));
}

#[test]
fn determinant_examples() {
    assert_eq!(
        determinant(&ComplexDenseMatrix::identity(5)).unwrap(),
        c(1.0, 0.0)
    );
    let d = ComplexDenseMatrix::from_diagonal(&[c(2.0, 0.0), c(0.0, 1.0)]);
    assert_eq!(determinant(&d).unwrap(), c(0.0, 2.0));
    assert_eq!(
        determinant(&ComplexDenseMatrix::zeros(3, 3)).unwrap(),
        c(0.0, 0.0)
    );
}

#[test]
fn determinant_matches_cofactor_oracle() {
    let a = sample_ginibre(10, 11);
    let sub = ComplexDenseMatrix::from_fn(4, 4, |i, j| a[(i, j)]);
    let lu = determinant(&sub).unwrap();
    let oracle = cofactor_det(&sub);
    assert!((lu - oracle).norm() <= 1e-12 * oracle.norm().max(1.0));

    let full = determinant(&a).unwrap();
    let product: Complex64 = eigenvalues(&a).unwrap().iter().product();
    assert!((full - product).norm() <= 1e-10 * full.norm());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn qr_reconstructs(n in 1usize..16, seed in any::<u64>()) {
        check_qr(&sample_ginibre(n, seed));
    }

    #[test]
    fn eigenphases_complete_and_unimodular(n in 1usize..24, seed in any::<u64>()) {
        let u = sample_haar_unitary(n, seed);
        for z in eigenvalues(&u).unwrap() {
            prop_assert!((z.norm() - 1.0).abs() <= 1e-8);
        }
        let s = eigenphases(&u).unwrap();
        prop_assert_eq!(s.n(), n);
        let product: Complex64 = s.eigenvalues().iter().product();
        let det = determinant(&u).unwrap();
        let dphase = (product / det).arg();
        prop_assert!(dphase.abs() <= 1e-8);
    }

    #[test]
    fn eigenphases_are_roots(n in 1usize..10, seed in any::<u64>()) {
        let u = sample_haar_unitary(n, seed);
        for z in eigenphases(&u).unwrap().eigenvalues() {
            let shifted = ComplexDenseMatrix::from_fn(n, n, |i, j| if i == j { u[(i, j)] - z } else { u[(i, j)] });
            prop_assert!(determinant(&shifted).unwrap().norm() <= 1e-9);
        }
    }

    #[test]
    fn global_phase_rotates_spectrum(n in 1usize..16, seed in any::<u64>(), phi in 0.0..6.28f64) {
        let u = sample_haar_unitary(n, seed);
        let e = Complex64::from_polar(1.0, phi);
        let v = ComplexDenseMatrix::from_fn(n, n, |i, j| u[(i, j)] * e);
        let expected = eigenphases(&u).unwrap().eigenvalues();
        let mut got = eigenphases(&v).unwrap().eigenvalues();
        for z in &expected {
            let target = z * e;
            let k = (0..got.len()).min_by(|a, b| (got[*a] - target).norm().total_cmp(&(got[*b] - target).norm())).unwrap();
            prop_assert!((got[k] - target).norm() <= 1e-9);
            got.swap_remove(k);
        }
    }
}
