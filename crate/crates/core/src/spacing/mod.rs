//! CUE nearest-neighbour spacing: exact Taylor coefficients of the sine-kernel
//! gap probability `E(s) = det(I - K_s)` and the small-x series for `Ip(x)`
//! built from them.
//!
//! The spacing density is `P(s) = E''(s) = Σ_l (l+4)(l+3) E_l s^{l+2}`, where
//! `E_l` is the coefficient of `s^{l+4}` in `E(s)`.

pub mod cache;
mod exact;
mod fredholm;
mod sigma;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};

pub use exact::{ratio_to_f64, PiPolynomial};

use crate::error::{Error, Result};

/// Largest supported `max_order`.
pub const MAX_ORDER: usize = 40;
/// Smallest `max_order` that reaches `E_0`.
pub const MIN_ORDER: usize = 4;
/// Default truncation of the `Ip` series.
pub const DEFAULT_L_MAX: usize = 30;
/// Default β in `x ~ β π² S² / 2`.
pub const DEFAULT_BETA: f64 = 0.5;

/// Taylor coefficients `e_0 ..= e_{max_order}` of `E(s)`, each an exact
/// combination of powers of π.
#[derive(Debug, Clone, PartialEq)]
pub struct GapProbabilitySeries {
    coefficients: Vec<PiPolynomial>,
    values: Vec<f64>,
    radius: f64,
}

impl GapProbabilitySeries {
    /// Validates the gap-probability structure `1 - s + 0 s² + 0 s³ + ...`.
    pub fn from_coefficients(coefficients: Vec<PiPolynomial>) -> Result<Self> {
        if coefficients.len() < MIN_ORDER + 1 {
            return Err(Error::InvalidParameter(format!(
                "series needs at least {} coefficients",
                MIN_ORDER + 1
            )));
        }
        let expected = [
            PiPolynomial::one(),
            PiPolynomial::from_ratio(-1, 1, 0),
            PiPolynomial::zero(),
            PiPolynomial::zero(),
        ];
        for (k, want) in expected.iter().enumerate() {
            if &coefficients[k] != want {
                return Err(Error::Format(format!(
                    "coefficient of s^{k} is {}, expected {want}",
                    coefficients[k]
                )));
            }
        }
        let values = coefficients.iter().map(PiPolynomial::to_f64).collect();
        let mut series = Self {
            coefficients,
            values,
            radius: 0.0,
        };
        series.radius = series.compute_trust_radius();
        Ok(series)
    }

    pub fn max_order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[PiPolynomial] {
        &self.coefficients
    }

    /// Exact coefficient of `s^k`.
    pub fn coefficient(&self, k: usize) -> Option<&PiPolynomial> {
        self.coefficients.get(k)
    }

    /// `E_l`, the coefficient of `s^{l+4}`.
    pub fn e_l(&self, l: usize) -> Option<&PiPolynomial> {
        self.coefficients.get(l + 4)
    }

    /// Largest `l` with `E_l` available.
    pub fn l_max(&self) -> usize {
        self.max_order() - 4
    }

    /// Double-precision Taylor coefficients of `E(s)`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Largest `s` at which [`p_cue`] evaluates the truncated series.
    ///
    /// The series of `E` is entire, but its terms grow before they decay, so
    /// with few terms the partial sum is only usable close to the origin.
    /// The radius is the largest `s` (capped at 3) where the last two
    /// nonzero terms of `P` are both below `1e-6`; an order-34 series is
    /// trusted up to about 1.36 and an order-40 series up to about 1.59.
    pub fn trust_radius(&self) -> f64 {
        self.radius
    }

    fn compute_trust_radius(&self) -> f64 {
        let mut lo = 0.0f64;
        let mut hi = TRUST_CAP;
        if self.tail_ok(hi) {
            return hi;
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if self.tail_ok(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    fn density_terms(&self, s: f64) -> impl Iterator<Item = f64> + '_ {
        self.values
            .iter()
            .enumerate()
            .skip(2)
            .map(move |(j, c)| (j * (j - 1)) as f64 * c * s.powi(j as i32 - 2))
    }

    fn tail_ok(&self, s: f64) -> bool {
        let terms: Vec<f64> = self.density_terms(s).filter(|t| *t != 0.0).collect();
        terms.iter().rev().take(2).all(|t| t.abs() <= TRUST_TAIL)
    }
}

const TRUST_CAP: f64 = 3.0;
const TRUST_TAIL: f64 = 1e-6;

fn check_order(max_order: usize) -> Result<()> {
    if max_order < MIN_ORDER {
        return Err(Error::InvalidParameter(format!(
            "max_order must be >= {MIN_ORDER}, got {max_order}"
        )));
    }
    if max_order > MAX_ORDER {
        return Err(Error::Capability(format!(
            "max_order {max_order} exceeds the supported {MAX_ORDER}"
        )));
    }
    Ok(())
}

/// Exact Taylor series of `E(s)` through `s^{max_order}`, from the Fredholm
/// minor expansion of `det(I - K_s)`.
pub fn gap_series(max_order: usize) -> Result<GapProbabilitySeries> {
    check_order(max_order)?;
    GapProbabilitySeries::from_coefficients(fredholm::gap_coefficients(max_order))
}

/// The same series from the Painlevé V sigma-form recursion; an independent
/// computation used to cross-check [`gap_series`].
pub fn gap_series_sigma_form(max_order: usize) -> Result<GapProbabilitySeries> {
    check_order(max_order)?;
    GapProbabilitySeries::from_coefficients(sigma::gap_coefficients(max_order))
}

/// Truncated spacing density `P(s) = E''(s)` with an estimate of the
/// truncation error (magnitude of the last nonzero term).
pub fn p_cue_with_tail(series: &GapProbabilitySeries, s: f64) -> Result<(f64, f64)> {
    if !(s >= 0.0) {
        return Err(Error::Domain(format!("spacing must be >= 0, got {s}")));
    }
    let radius = series.trust_radius();
    if s > radius {
        return Err(Error::Domain(format!(
            "s = {s} is beyond the trust radius {radius:.3} of an order-{} series",
            series.max_order()
        )));
    }
    let terms: Vec<f64> = series.density_terms(s).collect();
    let value: f64 = terms.iter().rev().sum();
    let tail = terms
        .iter()
        .rev()
        .find(|t| **t != 0.0)
        .map_or(0.0, |t| t.abs());
    Ok((value.max(0.0), tail))
}

/// Truncated spacing density `P(s)`, floored at zero.
pub fn p_cue(series: &GapProbabilitySeries, s: f64) -> Result<f64> {
    p_cue_with_tail(series, s).map(|(v, _)| v)
}

/// One term `c · x^{(l+3)/2}` of the small-x series of `Ip(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IpxTerm {
    pub l: usize,
    pub exponent: Ratio<u32>,
    pub coefficient: f64,
}

fn check_l_max(series: &GapProbabilitySeries, l_max: usize) -> Result<()> {
    if l_max > series.l_max() {
        return Err(Error::Capability(format!(
            "l_max = {l_max} needs max_order >= {}, series has {}",
            l_max + 4,
            series.max_order()
        )));
    }
    Ok(())
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "beta must be positive, got {beta}"
        )));
    }
    Ok(())
}

/// Coefficients `(2/(β π²))^{(l+3)/2} (l+4) E_l` for `l = 0 ..= l_max`.
pub fn ipx_coefficients(
    series: &GapProbabilitySeries,
    beta: f64,
    l_max: usize,
) -> Result<Vec<IpxTerm>> {
    check_l_max(series, l_max)?;
    check_beta(beta)?;
    let base = 2.0 / (beta * std::f64::consts::PI.powi(2));
    Ok((0..=l_max)
        .map(|l| {
            let e = series.values[l + 4];
            let coefficient = if e == 0.0 {
                0.0
            } else {
                base.powf((l + 3) as f64 / 2.0) * (l + 4) as f64 * e
            };
            IpxTerm {
                l,
                exponent: Ratio::new(l as u32 + 3, 2),
                coefficient,
            }
        })
        .collect())
}

/// Exact coefficients at β = 1/2, where `(2/(β π²))^{(l+3)/2} = 2^{l+3} π^{-(l+3)}`.
pub fn ipx_coefficients_exact(
    series: &GapProbabilitySeries,
    l_max: usize,
) -> Result<Vec<PiPolynomial>> {
    check_l_max(series, l_max)?;
    Ok((0..=l_max)
        .map(|l| {
            let factor = BigRational::from_integer(BigInt::from(l + 4) << (l + 3));
            series.coefficients[l + 4]
                .scale(&factor)
                .shift_power(-(l as i32 + 3))
        })
        .collect())
}

/// Small-x series `Σ_{l ≤ l_max} (2/(β π²))^{(l+3)/2} (l+4) E_l x^{(l+3)/2}`.
pub fn ipx_small_x(series: &GapProbabilitySeries, x: f64, beta: f64, l_max: usize) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("x must be >= 0, got {x}")));
    }
    let terms = ipx_coefficients(series, beta, l_max)?;
    let root = x.sqrt();
    Ok(terms
        .iter()
        .rev()
        .map(|t| t.coefficient * root.powi(t.l as i32 + 3))
        .sum())
}
