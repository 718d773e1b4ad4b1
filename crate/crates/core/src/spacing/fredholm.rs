//! Taylor coefficients of `det(I - K_s)` from the Fredholm minor expansion.
//!
//! Writing `sin(π(x-y))/(π(x-y)) = Σ_{a,b} κ_{ab} π^{a+b} x^a y^b` with
//!
//! ```text
//! κ_{ab} = (-1)^{(a-b)/2} / (a! b! (a+b+1))     (a + b even, else 0)
//! ```
//!
//! the Cauchy–Binet and Andréief identities turn the `m`-th Fredholm term
//! into a sum over pairs of index sets `A, B ⊂ N`, `|A| = |B| = m`:
//!
//! ```text
//! (1/m!) ∫_{[0,s]^m} det K(x_i, x_j) dx
//!     = Σ_{A,B} det κ_{AB} · det[1/(a_i + b_j + 1)] · π^{ΣA+ΣB} s^{ΣA+ΣB+m}
//! ```
//!
//! Both determinants have closed forms (κ_{AB} is block diagonal by parity
//! and each block is a Cauchy matrix up to diagonal signs), so every term is
//! an exact rational. The smallest power reached by the `m`-th term is
//! `s^{m^2}`, so only `m <= sqrt(max_order)` contributes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::exact::PiPolynomial;

/// Increasing `m`-subsets of `{0, 1, ...}` with element sum at most `max_sum`.
pub(crate) fn index_sets(m: usize, max_sum: usize) -> Vec<Vec<usize>> {
    fn rec(m: usize, start: usize, budget: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        let remaining = m - cur.len();
        // The cheapest completion from `v` is v + (v+1) + ... + (v+remaining-1).
        let mut v = start;
        loop {
            let cheapest = remaining * v + remaining * (remaining - 1) / 2;
            if cheapest > budget {
                break;
            }
            cur.push(v);
            rec(m, v + 1, budget - v, cur, out);
            cur.pop();
            v += 1;
        }
    }
    let mut out = Vec::new();
    rec(m, 0, max_sum, &mut Vec::with_capacity(m), &mut out);
    out
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `det[1/(x_i + y_j + 1)]` for increasing `x`, `y` of equal length, as an
/// exact `(numerator, denominator)` pair.
fn cauchy_determinant(x: &[usize], y: &[usize]) -> (BigInt, BigInt) {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            num *= (x[j] - x[i]) * (y[j] - y[i]);
        }
        for yj in y {
            den *= x[i] + yj + 1;
        }
    }
    (num, den)
}

/// Number of (odd, even) inversions: the sign of the stable permutation
/// that moves even entries in front of odd ones.
fn parity_sort_sign(v: &[usize]) -> i32 {
    let mut odd_seen = 0usize;
    let mut inversions = 0usize;
    for x in v {
        if x % 2 == 1 {
            odd_seen += 1;
        } else {
            inversions += odd_seen;
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn split_parity(v: &[usize]) -> (Vec<usize>, Vec<usize>) {
    v.iter().partition(|x| **x % 2 == 0)
}

/// `det κ_{AB}` in closed form; zero when the parity counts differ.
pub(crate) fn kernel_minor(a: &[usize], b: &[usize]) -> BigRational {
    let (ae, ao) = split_parity(a);
    let (be, bo) = split_parity(b);
    if ae.len() != be.len() {
        return BigRational::zero();
    }
    let sum_a: usize = a.iter().sum();
    let sum_b: usize = b.iter().sum();
    // (-1)^{(ΣA - ΣB)/2}; ΣA - ΣB is even once the parity counts match.
    let diff = sum_a as i64 - sum_b as i64;
    let mut sign = if (diff / 2).is_even() { 1 } else { -1 };
    sign *= parity_sort_sign(a) * parity_sort_sign(b);

    let (ne, de) = cauchy_determinant(&ae, &be);
    let (no, d_o) = cauchy_determinant(&ao, &bo);
    let facts: BigInt = a.iter().chain(b).map(|&k| factorial(k)).product();
    BigRational::new(BigInt::from(sign) * ne * no, de * d_o * facts)
}

/// `det[1/(a_i + b_j + 1)]`.
pub(crate) fn gram_minor(a: &[usize], b: &[usize]) -> BigRational {
    let (n, d) = cauchy_determinant(a, b);
    BigRational::new(n, d)
}

/// Coefficients `e_0 ..= e_{max_order}` of `E(s) = det(I - K_s)`.
pub(crate) fn gap_coefficients(max_order: usize) -> Vec<PiPolynomial> {
    let mut coeffs = vec![PiPolynomial::zero(); max_order + 1];
    coeffs[0] = PiPolynomial::one();
    let mut m = 1usize;
    while m * m <= max_order {
        let budget = max_order - m;
        let min_sum = m * (m - 1) / 2;
        let sets = index_sets(m, budget - min_sum);
        let sums: Vec<usize> = sets.iter().map(|s| s.iter().sum()).collect();
        let sign = if m % 2 == 0 { 1 } else { -1 };
        // Accumulate per power in a single rational to keep the number of
        // normalizations down.
        let mut acc: Vec<BigRational> = vec![BigRational::zero(); budget + 1];
        for (a, sa) in sets.iter().zip(&sums) {
            for (b, sb) in sets.iter().zip(&sums) {
                let power = sa + sb;
                if power > budget || power % 2 == 1 {
                    continue;
                }
                let k = kernel_minor(a, b);
                if k.is_zero() {
                    continue;
                }
                acc[power] += k * gram_minor(a, b);
            }
        }
        for (power, c) in acc.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = if sign < 0 { -c } else { c };
            coeffs[power + m] += &PiPolynomial::monomial(c, power as i32);
        }
        m += 1;
    }
    coeffs
}
