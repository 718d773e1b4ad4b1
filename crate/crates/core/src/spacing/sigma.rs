//! Taylor coefficients of the gap probability from the Jimbo–Miwa–Okamoto
//! sigma form of Painlevé V.
//!
//! With `t = π s` and `σ(t) = t d/dt log E`, the sine-kernel determinant
//! satisfies
//!
//! ```text
//! (t σ'')² + 4 (t σ' - σ) (t σ' - σ + σ'²) = 0,    σ = -t/π - t²/π² + O(t³).
//! ```
//!
//! Writing `σ = Σ a_k t^k`, the coefficient of `t^k` in the equation is
//! linear in `a_k` with factor `-4 (k-1)² / π²`, which gives an explicit
//! recursion. Every `a_k` is a polynomial in `1/π` with rational
//! coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::exact::PiPolynomial;

fn int(k: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

/// `Σ_{i+j=k} x_i y_j` over the index ranges where both factors exist.
fn convolve_at(x: &[PiPolynomial], y: &[PiPolynomial], k: usize) -> PiPolynomial {
    let mut out = PiPolynomial::zero();
    for i in 0..=k.min(x.len().saturating_sub(1)) {
        let j = k - i;
        if j < y.len() && !x[i].is_zero() && !y[j].is_zero() {
            out += &(&x[i] * &y[j]);
        }
    }
    out
}

/// Coefficients `e_0 ..= e_{max_order}` of `E(s)`.
pub(crate) fn gap_coefficients(max_order: usize) -> Vec<PiPolynomial> {
    let m = max_order;
    // a[k] is the coefficient of t^k in σ; index 0 unused.
    let mut a = vec![PiPolynomial::zero(); m + 2];
    a[1] = PiPolynomial::from_ratio(-1, 1, -1);
    if m >= 2 {
        a[2] = PiPolynomial::from_ratio(-1, 1, -2);
    }
    for k in 3..=m {
        // Series of tσ'' (index i holds t^i), tσ' - σ, and σ', built from
        // the coefficients known so far (a_k is still zero here).
        let g: Vec<PiPolynomial> = (0..=k)
            .map(|i| {
                if i < k {
                    a[i + 1].scale(&int((i + 1) * i))
                } else {
                    PiPolynomial::zero()
                }
            })
            .collect();
        let f: Vec<PiPolynomial> = (0..=k)
            .map(|i| {
                if i >= 1 {
                    a[i].scale(&int(i - 1))
                } else {
                    PiPolynomial::zero()
                }
            })
            .collect();
        let dsig: Vec<PiPolynomial> = (0..=k).map(|j| a[j + 1].scale(&int(j + 1))).collect();
        let dsig_sq: Vec<PiPolynomial> = (0..=k).map(|j| convolve_at(&dsig, &dsig, j)).collect();

        let mut rest = convolve_at(&g, &g, k);
        rest += &convolve_at(&f, &f, k).scale(&int(4));
        rest += &convolve_at(&f, &dsig_sq, k).scale(&int(4));
        // -4 (k-1)² π^-2 a_k + rest = 0.
        let factor = BigRational::new(BigInt::from(1), BigInt::from(4 * (k - 1) * (k - 1)));
        a[k] = rest.scale(&factor).shift_power(2);
    }

    // log E = Σ a_k t^k / k; exponentiate with e_n = (1/n) Σ_k k l_k e_{n-k}.
    let mut e = vec![PiPolynomial::zero(); m + 1];
    e[0] = PiPolynomial::one();
    for n in 1..=m {
        let mut acc = PiPolynomial::zero();
        for k in 1..=n {
            // k · l_k = a_k.
            if !a[k].is_zero() && !e[n - k].is_zero() {
                acc += &(&a[k] * &e[n - k]);
            }
        }
        e[n] = acc.scale(&BigRational::new(BigInt::from(1), BigInt::from(n)));
    }
    // Convert from powers of t = π s to powers of s.
    e.iter()
        .enumerate()
        .map(|(n, c)| c.shift_power(n as i32))
        .collect()
}
