use std::f64::consts::TAU;

use num_complex::Complex64;
use proptest::prelude::*;
use zprime_core::szego::{
    default_grid_size, ds_moment_exact, ds_moment_mc, g_hat, h_hat, heine_szego_mc,
    second_derivative_check, second_derivative_closed_form, symbol_fourier, symbol_fourier_auto,
    symbol_value, szego_limit_error, szego_limit_error_direct, szego_sum, toeplitz_determinant,
    MomentRegime,
};
use zprime_core::{Error, Symbol, SzegoParameters, ToeplitzSymbol};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn params(w: Complex64, alpha: f64, z: Complex64) -> SzegoParameters {
    SzegoParameters::new(w, alpha, z).unwrap()
}

fn hat(p: &SzegoParameters, which: Symbol, k: i64) -> Complex64 {
    match which {
        Symbol::G => g_hat(p, k),
        Symbol::H => h_hat(p, k),
    }
}

fn adaptive_simpson(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64, tol: f64) -> Complex64 {
    fn step(
        f: &dyn Fn(f64) -> Complex64,
        a: f64,
        b: f64,
        fa: Complex64,
        fm: Complex64,
        fb: Complex64,
        whole: Complex64,
        tol: f64,
        depth: u32,
    ) -> Complex64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (f(0.5 * (a + m)), f(0.5 * (m + b)));
        let left = (m - a) / 6.0 * (fa + 4.0 * lm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * rm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.norm() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, lm, fm, left, tol / 2.0, depth - 1)
            + step(f, m, b, fm, rm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 40)
}

#[test]
fn fourier_coefficient_examples() {
    let w = c(0.7, -0.4);
    for p in [params(w, 0.0, c(0.3, 0.1)), params(w, 1.5, c(-0.6, 0.2))] {
        assert_eq!(g_hat(&p, 1), -0.5 * w);
        assert_eq!(h_hat(&p, 1), -0.5 * w);
        assert_eq!(g_hat(&p, 0), c(0.0, 0.0));
        assert_eq!(h_hat(&p, 0), c(0.0, 0.0));
    }
    let p = params(c(1.0, 0.0), 2.0, c(0.0, 0.0));
    assert_eq!(g_hat(&p, 2), c(-1.0, 0.0));
    assert_eq!(h_hat(&p, 2), c(0.0, -1.0));
    let p = params(w, 0.0, c(0.4, 0.3));
    for k in -6..=6 {
        assert_eq!(g_hat(&p, k), h_hat(&p, k));
    }
}

#[test]
fn parameters_need_open_disk() {
    assert!(matches!(
        SzegoParameters::new(c(1.0, 0.0), 0.0, c(1.0, 0.0)),
        Err(Error::Domain(_))
    ));
    assert!(matches!(
        SzegoParameters::new(c(1.0, 0.0), 0.0, c(0.8, 0.8)),
        Err(Error::Domain(_))
    ));
}

#[test]
fn szego_sum_examples() {
    let zero = params(c(0.0, 0.0), 0.0, c(0.5, 0.0));
    assert_eq!(szego_sum(&zero, Symbol::G).unwrap(), 0.0);
    assert_eq!(szego_sum(&zero, Symbol::H).unwrap(), 0.0);
    let w = c(1.2, -0.3);
    for r in [0.0, 0.5, 0.9] {
        let p = params(w, 0.0, c(0.0, r));
        let want = w.norm_sqr() / (4.0 * (1.0 - r * r).powi(2));
        assert!((szego_sum(&p, Symbol::G).unwrap() - want).abs() < 1e-12 * want);
        assert!((szego_sum(&p, Symbol::H).unwrap() - want).abs() < 1e-12 * want);
    }
}

#[test]
fn second_derivative_closed_form_examples() {
    assert!((second_derivative_closed_form(c(0.0, 0.0), c(0.0, 0.0)).unwrap() + 2.0).abs() < 1e-15);
    let v = second_derivative_closed_form(c(0.0, 0.0), c(0.5, 0.0)).unwrap();
    let independent = -6.0 * 0.25 / 0.75f64.powi(4) - 2.0 / 0.75f64.powi(3);
    assert!((v - independent).abs() < 1e-12);
    assert!((v + 9.4815).abs() < 1e-4);
    assert!(matches!(
        second_derivative_closed_form(c(0.0, 0.0), c(1.0, 0.0)),
        Err(Error::Domain(_))
    ));
}

#[test]
fn trivial_symbol() {
    let p = params(c(0.0, 0.0), 0.0, c(0.5, 0.0));
    let sym = symbol_fourier(&p, Symbol::G, 16, 128).unwrap();
    assert!((sym.coefficient(0) - 1.0).norm() < 1e-15);
    for k in 1..=16 {
        assert!(sym.coefficient(k).norm() <= 1e-14);
        assert!(sym.coefficient(-k).norm() <= 1e-14);
    }
    for n in [1, 5, 16] {
        assert!((toeplitz_determinant(&sym, n).unwrap() - 1.0).norm() < 1e-13);
    }
    for n in [8, 16, 32, 64] {
        assert_eq!(szego_limit_error(&p, Symbol::G, n).unwrap(), 0.0);
        assert_eq!(szego_limit_error(&p, Symbol::H, n).unwrap(), 0.0);
    }
}

#[test]
fn fourier_coefficient_matches_quadrature() {
    let p = params(c(1.0, 0.0), 0.0, c(0.5, 0.0));
    let sym = symbol_fourier(&p, Symbol::G, 64, default_grid_size(64)).unwrap();
    for k in [0i64, 1, -1, 3] {
        let f =
            move |t: f64| Complex64::from_polar(1.0, symbol_value(&p, Symbol::G, t) - k as f64 * t);
        let oracle = adaptive_simpson(&f, 0.0, TAU, 1e-14) / TAU;
        assert!(
            (sym.coefficient(k) - oracle).norm() < 1e-10,
            "k={k}: {} vs {oracle}",
            sym.coefficient(k)
        );
    }
}

#[test]
fn fourier_argument_checks() {
    let p = params(c(1.0, 0.0), 1.0, c(0.9, 0.0));
    assert!(matches!(
        symbol_fourier(&p, Symbol::G, 16, 100),
        Err(Error::InvalidParameter(_))
    ));
    assert!(matches!(
        symbol_fourier(&p, Symbol::G, 16, 64),
        Err(Error::InvalidParameter(_))
    ));
    assert!(matches!(
        symbol_fourier(&p, Symbol::G, 16, 128),
        Err(Error::Resolution(_))
    ));
    let sym = symbol_fourier_auto(&p, Symbol::G, 16).unwrap();
    assert!(sym.truncation() > 16);
    assert!(matches!(
        toeplitz_determinant(&sym, sym.truncation() + 1),
        Err(Error::Capability(_))
    ));
    assert_eq!(toeplitz_determinant(&sym, 1).unwrap(), sym.coefficient(0));
    assert!(ToeplitzSymbol::new(2, vec![c(1.0, 0.0); 4]).is_err());
}

#[test]
fn heine_szego_identity() {
    let cases = [
        (params(c(1.0, 0.0), 0.0, c(0.5, 0.0)), Symbol::G, 6, 100_000),
        (params(c(0.6, 0.3), 0.4, c(0.2, -0.4)), Symbol::G, 8, 20_000),
        (params(c(-0.5, 0.8), 0.7, c(0.3, 0.3)), Symbol::H, 4, 20_000),
        (params(c(0.9, 0.0), 0.2, c(0.0, 0.6)), Symbol::H, 1, 20_000),
    ];
    for (i, (p, which, n, samples)) in cases.into_iter().enumerate() {
        let sym = symbol_fourier_auto(&p, which, 16).unwrap();
        let det = toeplitz_determinant(&sym, n).unwrap();
        let mc = heine_szego_mc(&p, which, n, samples, 100 + i as u64).unwrap();
        assert!(
            (mc.mean.re - det.re).abs() <= 4.0 * mc.std_error_re,
            "case {i}: {det} vs {:?}",
            mc
        );
        assert!(
            (mc.mean.im - det.im).abs() <= 4.0 * mc.std_error_im,
            "case {i}: {det} vs {:?}",
            mc
        );
    }
    let p = params(c(1.0, 0.0), 0.0, c(0.5, 0.0));
    assert!(heine_szego_mc(&p, Symbol::G, 4, 1, 0).is_err());
}

#[test]
fn limit_error_decreases() {
    let p = params(c(1.0, 0.0), 0.0, c(0.5, 0.0));
    let errors: Vec<f64> = [8, 16, 32, 64]
        .iter()
        .map(|&n| szego_limit_error(&p, Symbol::G, n).unwrap())
        .collect();
    assert!(errors.windows(2).all(|w| w[1] < w[0]), "{errors:?}");
    assert!(errors[3] <= 1e-2);
    assert!(errors[3] < errors[0]);
}

#[test]
fn limit_error_agrees_with_direct_determinant() {
    let cases = [
        params(c(1.0, 0.0), 0.0, c(0.5, 0.0)),
        params(c(0.5, -0.5), 0.5, c(0.4, 0.3)),
        params(c(2.0, 1.0), 0.3, c(-0.7, 0.0)),
    ];
    for p in cases {
        for which in [Symbol::G, Symbol::H] {
            for n in [4, 8, 12] {
                let fast = szego_limit_error(&p, which, n).unwrap();
                let direct = szego_limit_error_direct(&p, which, n).unwrap();
                assert!(
                    (fast - direct).abs() <= 1e-10 + 1e-6 * direct,
                    "{p:?} {which:?} n={n}: {fast} vs {direct}"
                );
            }
        }
    }
}

#[test]
fn second_derivative_convergence() {
    let d = second_derivative_check(c(1.0, 0.0), c(0.5, 0.0), 64, 1e-3).unwrap();
    assert!(
        (d.finite_difference - d.closed_form).abs() <= 0.01 * d.closed_form.abs(),
        "{d:?}"
    );
    assert!(d.finite_difference_im.abs() < 1e-6);
    assert!(matches!(
        second_derivative_check(c(1.0, 0.0), c(0.5, 0.0), 8, 1e-5),
        Err(Error::InvalidParameter(_))
    ));
    assert!(matches!(
        second_derivative_check(c(1.0, 0.0), c(0.5, 0.0), 8, 0.1),
        Err(Error::InvalidParameter(_))
    ));
}

#[test]
fn moments_match_for_small_weights() {
    let partitions: [&[u32]; 11] = [
        &[1],
        &[2],
        &[1, 1],
        &[3],
        &[2, 1],
        &[1, 1, 1],
        &[4],
        &[3, 1],
        &[2, 2],
        &[2, 1, 1],
        &[1, 1, 1, 1],
    ];
    let expected = [1.0, 2.0, 2.0, 3.0, 2.0, 6.0, 4.0, 3.0, 8.0, 4.0, 24.0];
    for (i, (part, want)) in partitions.iter().zip(expected).enumerate() {
        assert_eq!(ds_moment_exact(part), want);
        let est = ds_moment_mc(part, 8, 10_000, 500 + i as u64).unwrap();
        assert_eq!(est.regime, MomentRegime::Exact);
        assert!(
            (est.estimate - want).abs() <= 4.0 * est.std_error,
            "{part:?}: {est:?}"
        );
    }
}

#[test]
fn moment_regimes_and_errors() {
    let est = ds_moment_mc(&[3, 3], 4, 100, 1).unwrap();
    assert_eq!(est.regime, MomentRegime::Inequality);
    assert!(matches!(
        ds_moment_mc(&[], 4, 100, 1),
        Err(Error::InvalidParameter(_))
    ));
    assert!(matches!(
        ds_moment_mc(&[0], 4, 100, 1),
        Err(Error::InvalidParameter(_))
    ));
}

fn small_params() -> impl Strategy<Value = SzegoParameters> {
    (
        -2.0..2.0f64,
        -2.0..2.0f64,
        -2.0..2.0f64,
        0.0..0.9f64,
        0.0..TAU,
    )
        .prop_map(|(wr, wi, alpha, r, arg)| params(c(wr, wi), alpha, Complex64::from_polar(r, arg)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closed_form_sum_matches_partial_sums(p in small_params()) {
        for which in [Symbol::G, Symbol::H] {
            let direct: f64 = (1..=2000).map(|k| k as f64 * hat(&p, which, k).norm_sqr()).sum();
            let closed = szego_sum(&p, which).unwrap();
            prop_assert!((direct - closed).abs() <= 1e-12 * closed.abs().max(1.0));
        }
    }

    #[test]
    fn symbols_are_real(p in small_params(), theta in 0.0..TAU) {
        for which in [Symbol::G, Symbol::H] {
            prop_assert_eq!(hat(&p, which, -3), hat(&p, which, 3).conj());
            let sum: Complex64 = (-2000i64..=2000)
                .map(|k| hat(&p, which, k) * Complex64::from_polar(1.0, k as f64 * theta))
                .sum();
            prop_assert!(sum.im.abs() <= 1e-12);
            prop_assert!((sum.re - symbol_value(&p, which, theta)).abs() <= 1e-10);
        }
    }

    #[test]
    fn unimodular_symbol_parseval(p in small_params()) {
        let sym = symbol_fourier_auto(&p, Symbol::G, 16).unwrap();
        let energy: f64 = sym.coefficients().iter().map(|f| f.norm_sqr()).sum();
        prop_assert!((energy - 1.0).abs() <= 1e-12);
    }
}
