//! Toeplitz determinants of the symbols `exp(i g)` and `exp(i h)`, their
//! strong Szegő limits, and Monte Carlo checks of the Heine–Szegő identity
//! and of Diaconis–Shahshahani moments.
//!
//! For `|z| < 1` with `z̄ = conj(z)`, the real symbols have Fourier
//! coefficients (`k >= 1`; `k <= -1` by conjugation; zero at `k = 0`)
//!
//! ```text
//! ĝ_k = -(w/2) z̄^{k-1} - (α/2)(k-1) z̄^{k-2}
//! ĥ_k = -(w/2) z̄^{k-1} - (iα/2)(k-1) z̄^{k-2}
//! ```

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::haar::{power_trace, sample_eigenphases, EnsembleConfig};
use crate::linalg::{determinant, ComplexDenseMatrix};

/// Largest relative size of the outermost retained Fourier coefficient.
pub const DECAY_TOL: f64 = 1e-13;
/// Cap on the truncation [`szego_limit_error`] grows to.
pub const MAX_TRUNCATION: usize = 1 << 14;
/// Default step of the α finite difference.
pub const DEFAULT_DELTA_ALPHA: f64 = 1e-3;
/// Relative disagreement between the δ and δ/2 stencils above which the
/// second derivative is Richardson-extrapolated.
pub const RICHARDSON_TRIGGER: f64 = 2e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SzegoParameters {
    pub w: Complex64,
    pub alpha: f64,
    pub z: Complex64,
}

impl SzegoParameters {
    pub fn new(w: Complex64, alpha: f64, z: Complex64) -> Result<Self> {
        if !(z.norm() < 1.0) {
            return Err(Error::Domain(format!("|z| must be < 1, got {}", z.norm())));
        }
        if !(w.re.is_finite() && w.im.is_finite() && alpha.is_finite()) {
            return Err(Error::InvalidParameter("w and alpha must be finite".into()));
        }
        Ok(Self { w, alpha, z })
    }

    /// Same parameters with a different α.
    pub fn with_alpha(&self, alpha: f64) -> Self {
        Self { alpha, ..*self }
    }

    pub fn r(&self) -> f64 {
        self.z.norm()
    }
}

/// Selects the symbol `g` or `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    G,
    H,
}

impl Symbol {
    /// Multiplier of the α term: 1 for `g`, `i` for `h`.
    fn alpha_unit(self) -> Complex64 {
        match self {
            Symbol::G => Complex64::new(1.0, 0.0),
            Symbol::H => Complex64::new(0.0, 1.0),
        }
    }
}

fn hat(params: &SzegoParameters, which: Symbol, k: i64) -> Complex64 {
    if k == 0 {
        return Complex64::new(0.0, 0.0);
    }
    if k < 0 {
        return hat(params, which, -k).conj();
    }
    let zb = params.z.conj();
    let mut out = -0.5 * params.w * zb.powi(k as i32 - 1);
    if k >= 2 {
        out -= 0.5 * params.alpha * which.alpha_unit() * (k - 1) as f64 * zb.powi(k as i32 - 2);
    }
    out
}

pub fn g_hat(params: &SzegoParameters, k: i64) -> Complex64 {
    hat(params, Symbol::G, k)
}

pub fn h_hat(params: &SzegoParameters, k: i64) -> Complex64 {
    hat(params, Symbol::H, k)
}

/// `g(θ)` or `h(θ)` summed in closed form: with `q = z̄ e^{iθ}`,
/// `Σ_{k>=1} ĝ_k e^{ikθ} = -(w/2) e^{iθ}/(1-q) - (α/2) e^{2iθ}/(1-q)²`, and the
/// symbol is twice its real part.
pub fn symbol_value(params: &SzegoParameters, which: Symbol, theta: f64) -> f64 {
    let e = Complex64::from_polar(1.0, theta);
    let q = params.z.conj() * e;
    let one_minus = Complex64::new(1.0, 0.0) - q;
    let half = -0.5 * params.w * e / one_minus
        - 0.5 * params.alpha * which.alpha_unit() * e * e / (one_minus * one_minus);
    2.0 * half.re
}

/// `Σ_{k>=1} k |f̂_k|²` in closed form:
/// `c(w, α, r) + α Re(w z̄)/(1-r²)³` for `g` (`Im` for `h`), where
/// `c = |w|²/(4(1-r²)²) + (α²/2)(3r²/(1-r²)⁴ + 1/(1-r²)³)`.
pub fn szego_sum(params: &SzegoParameters, which: Symbol) -> Result<f64> {
    let r2 = params.z.norm_sqr();
    if !(r2 < 1.0) {
        return Err(Error::Domain("|z| must be < 1".into()));
    }
    let d = 1.0 - r2;
    let a = params.alpha;
    let c = params.w.norm_sqr() / (4.0 * d * d)
        + 0.5 * a * a * (3.0 * r2 / d.powi(4) + 1.0 / d.powi(3));
    let wz = params.w * params.z.conj();
    let cross = match which {
        Symbol::G => wz.re,
        Symbol::H => wz.im,
    };
    Ok(c + a * cross / d.powi(3))
}

/// Fourier coefficients `f̂_k`, `-K <= k <= K`, of a symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzSymbol {
    truncation: usize,
    coefficients: Vec<Complex64>,
}

impl ToeplitzSymbol {
    /// `coefficients[k + K]` holds `f̂_k`.
    pub fn new(truncation: usize, coefficients: Vec<Complex64>) -> Result<Self> {
        if truncation == 0 || coefficients.len() != 2 * truncation + 1 {
            return Err(Error::Dimension(format!(
                "truncation {truncation} needs {} coefficients, got {}",
                2 * truncation + 1,
                coefficients.len()
            )));
        }
        Ok(Self {
            truncation,
            coefficients,
        })
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// `f̂_k`, zero outside the truncation.
    pub fn coefficient(&self, k: i64) -> Complex64 {
        let idx = k + self.truncation as i64;
        if idx < 0 || idx as usize >= self.coefficients.len() {
            Complex64::new(0.0, 0.0)
        } else {
            self.coefficients[idx as usize]
        }
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }
}

/// Fourier coefficients of `exp(i g)` (or `exp(i h)`) up to `|k| <= truncation`
/// from a `grid_size`-point DFT of the closed-form symbol.
pub fn symbol_fourier(
    params: &SzegoParameters,
    which: Symbol,
    truncation: usize,
    grid_size: usize,
) -> Result<ToeplitzSymbol> {
    if truncation == 0 {
        return Err(Error::InvalidParameter("truncation must be >= 1".into()));
    }
    if !grid_size.is_power_of_two() || grid_size < 8 * truncation {
        return Err(Error::InvalidParameter(format!(
            "grid size must be a power of two >= 8 * truncation = {}, got {grid_size}",
            8 * truncation
        )));
    }
    let mut buf: Vec<Complex64> = (0..grid_size)
        .map(|j| {
            let theta = TAU * j as f64 / grid_size as f64;
            Complex64::from_polar(1.0, symbol_value(params, which, theta))
        })
        .collect();
    FftPlanner::new()
        .plan_fft_forward(grid_size)
        .process(&mut buf);
    let scale = 1.0 / grid_size as f64;
    let k_max = truncation as i64;
    let coefficients: Vec<Complex64> = (-k_max..=k_max)
        .map(|k| buf[k.rem_euclid(grid_size as i64) as usize] * scale)
        .collect();
    let largest = coefficients.iter().fold(0.0f64, |m, c| m.max(c.norm()));
    let edge = coefficients[0]
        .norm()
        .max(coefficients[2 * truncation].norm());
    if largest > 0.0 && edge / largest > DECAY_TOL {
        return Err(Error::Resolution(format!(
            "|f_K| / max |f_k| = {:.3e} at K = {truncation}; increase the truncation",
            edge / largest
        )));
    }
    Ok(ToeplitzSymbol {
        truncation,
        coefficients,
    })
}

/// Smallest admissible grid for a truncation.
pub fn default_grid_size(truncation: usize) -> usize {
    (8 * truncation).next_power_of_two()
}

/// Symbol with the smallest truncation `K = start, 2 start, ...` that passes
/// the decay check.
pub fn symbol_fourier_auto(
    params: &SzegoParameters,
    which: Symbol,
    start: usize,
) -> Result<ToeplitzSymbol> {
    let mut k = start.max(1);
    loop {
        match symbol_fourier(params, which, k, default_grid_size(k)) {
            Err(Error::Resolution(_)) if k < MAX_TRUNCATION => k *= 2,
            other => return other,
        }
    }
}

/// Determinant of the `n x n` Toeplitz matrix with entries `f̂_{k-j}`.
pub fn toeplitz_determinant(symbol: &ToeplitzSymbol, n: usize) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    if n > symbol.truncation {
        return Err(Error::Capability(format!(
            "n = {n} exceeds the symbol truncation {}",
            symbol.truncation
        )));
    }
    let t = ComplexDenseMatrix::from_fn(n, n, |j, k| symbol.coefficient(k as i64 - j as i64));
    determinant(&t)
}

/// `D_n[exp(i f)]` from Fourier coefficients truncated where they decay below [`DECAY_TOL`].
pub fn szego_determinant(params: &SzegoParameters, which: Symbol, n: usize) -> Result<Complex64> {
    let symbol = symbol_fourier_auto(params, which, n.max(16))?;
    toeplitz_determinant(&symbol, n)
}

/// Power series `exp(Σ_{j>=1} p_j t^j)` to `len` terms.
fn exp_series(p: &[Complex64], len: usize) -> Vec<Complex64> {
    let mut f = vec![Complex64::new(0.0, 0.0); len];
    f[0] = Complex64::new(1.0, 0.0);
    for k in 1..len {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 1..=k.min(p.len() - 1) {
            acc += j as f64 * p[j] * f[k - j];
        }
        f[k] = acc / k as f64;
    }
    f
}

/// `exp(z) - 1` without cancellation for small `|z|`.
fn exp_m1(z: Complex64) -> Complex64 {
    let half_sin = (0.5 * z.im).sin();
    let e = z.re.exp();
    Complex64::new(
        z.re.exp_m1() * z.im.cos() - 2.0 * half_sin * half_sin,
        e * z.im.sin(),
    )
}

/// `det(I - K) - 1`, accurate relative to `|K|` when `K` is small.
fn det_identity_minus_m1(k: &ComplexDenseMatrix) -> Result<Complex64> {
    let frob = k
        .as_slice()
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt();
    if frob == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if frob >= 0.25 {
        let n = k.rows();
        let m = ComplexDenseMatrix::from_fn(n, n, |i, j| if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) } - k[(i, j)]);
        return Ok(determinant(&m)? - 1.0);
    }
    // log det(I - K) = -Σ_m Tr(K^m)/m; |Tr K^m| <= frob^m.
    let mut log_det = -k.trace();
    let mut power = k.clone();
    let mut bound = frob;
    for m in 2..200 {
        bound *= frob;
        if bound < 1e-18 * log_det.norm() {
            break;
        }
        power = power.matmul(k)?;
        log_det -= power.trace() / m as f64;
    }
    Ok(exp_m1(log_det))
}

/// `D_n[exp(i f)] exp(E(f)) - 1` from the Borodin–Okounkov identity
/// `D_n = exp(-E) det(I - Q_n H(b) H(c̃) Q_n)`, with `b = f_- / f_+`,
/// `c = f_+ / f_-` for the Wiener–Hopf factors `f_± = exp(i f_±)` of the symbol.
/// The factor coefficients come from exact power-series recursions, so the
/// result keeps its relative accuracy far below double-precision roundoff
/// of the determinant itself. Returns `None` when the factors are too
/// large for that (see [`BO_MAX_CONDITION`]).
fn borodin_okounkov_defect(
    params: &SzegoParameters,
    which: Symbol,
    n: usize,
) -> Result<Option<Complex64>> {
    let r = params.r().max(0.01);
    // Entries beyond index m are below 1e-17 of the leading ones.
    let m = ((17.0 * std::f64::consts::LN_10 / -r.ln()).ceil() as usize + 8).min(600);
    let len = n + 3 * m + 2;
    let i = Complex64::new(0.0, 1.0);
    let plus: Vec<Complex64> = (0..len as i64).map(|j| hat(params, which, j)).collect();
    let minus: Vec<Complex64> = plus.iter().map(|c| c.conj()).collect();
    let scaled =
        |v: &[Complex64], s: Complex64| -> Vec<Complex64> { v.iter().map(|c| s * c).collect() };
    let fp = exp_series(&scaled(&plus, i), len);
    let fp_inv = exp_series(&scaled(&plus, -i), len);
    // Coefficient m of these is the coefficient of ζ^{-m}.
    let fm = exp_series(&scaled(&minus, i), len);
    let fm_inv = exp_series(&scaled(&minus, -i), len);
    let b = |k: usize| -> Complex64 { (0..len - k).map(|j| fp_inv[k + j] * fm[j]).sum() };
    let c_neg = |k: usize| -> Complex64 { (0..len - k).map(|j| fp[j] * fm_inv[k + j]).sum() };
    let bs: Vec<Complex64> = (0..2 * m).map(|j| b(n + 1 + j)).collect();
    let cs: Vec<Complex64> = (0..2 * m).map(|j| c_neg(n + 1 + j)).collect();
    // Wiener norms of b and c (their nonnegative and nonpositive halves
    // respectively, which carry the bulk of each); large values mean the
    // operator H(b) H(c̃) is a small difference of large terms.
    let bsum: f64 = (0..len).map(|k| b(k).norm()).sum();
    let csum: f64 = (0..len).map(|k| c_neg(k).norm()).sum();
    if !(bsum * csum <= BO_MAX_CONDITION) {
        return Ok(None);
    }
    let kmat =
        ComplexDenseMatrix::from_fn(m, m, |j, k| (0..m).map(|l| bs[j + l] * cs[l + k]).sum());
    det_identity_minus_m1(&kmat).map(Some)
}

/// Largest product of the Wiener norms of `b` and `c` for which the
/// Borodin–Okounkov evaluation is used.
pub const BO_MAX_CONDITION: f64 = 1e5;

/// Allowed gap between the direct and Borodin–Okounkov errors: absolute
/// part (determinant roundoff) and relative part.
pub const CONSISTENCY_ABS_TOL: f64 = 1e-10;
pub const CONSISTENCY_REL_TOL: f64 = 1e-6;

/// `|D_n[exp(i f)] - exp(-E(f))|` for `f = g` or `h`.
///
/// When the symbol's Wiener–Hopf factors are well conditioned the value is
/// evaluated through the Borodin–Okounkov identity, so that it stays
/// meaningful below the roundoff level of the `n x n` determinant; the
/// direct Toeplitz determinant must then agree with it to within
/// [`CONSISTENCY_ABS_TOL`] + [`CONSISTENCY_REL_TOL`] times the error.
/// Otherwise the direct value is returned.
pub fn szego_limit_error(params: &SzegoParameters, which: Symbol, n: usize) -> Result<f64> {
    let limit = (-szego_sum(params, which)?).exp();
    let direct = (szego_determinant(params, which, n)? - limit).norm();
    if limit == 0.0 {
        // exp(-E) underflows; the determinant alone is the error.
        return Ok(direct);
    }
    let Some(defect) = borodin_okounkov_defect(params, which, n)? else {
        return Ok(direct);
    };
    let accurate = limit * defect.norm();
    if !((direct - accurate).abs() <= CONSISTENCY_ABS_TOL + CONSISTENCY_REL_TOL * accurate) {
        return Err(Error::Resolution(format!(
            "direct determinant error {direct:.3e} disagrees with the Borodin-Okounkov value {accurate:.3e}"
        )));
    }
    Ok(accurate)
}

/// The direct `|D_n - exp(-E)|` without the high-accuracy evaluation; limited
/// by the roundoff of the determinant.
pub fn szego_limit_error_direct(params: &SzegoParameters, which: Symbol, n: usize) -> Result<f64> {
    let limit = (-szego_sum(params, which)?).exp();
    Ok((szego_determinant(params, which, n)? - limit).norm())
}

/// Finite-difference and closed-form values of
/// `∂²/∂α² [D_n[exp(i g)] + D_n[exp(i h)]]` at `α = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondDerivative {
    /// Real part of the central difference (Richardson-extrapolated when
    /// `extrapolated`).
    pub finite_difference: f64,
    /// Imaginary part of the same difference; vanishes in the limit.
    pub finite_difference_im: f64,
    pub closed_form: f64,
    pub extrapolated: bool,
}

/// `[|w|²r²/(1-r²)⁶ - 6r²/(1-r²)⁴ - 2/(1-r²)³] exp(-|w|²/(4(1-r²)²))`.
pub fn second_derivative_closed_form(w: Complex64, z: Complex64) -> Result<f64> {
    let r2 = z.norm_sqr();
    if !(r2 < 1.0) {
        return Err(Error::Domain("|z| must be < 1".into()));
    }
    let d = 1.0 - r2;
    let w2 = w.norm_sqr();
    Ok(
        (w2 * r2 / d.powi(6) - 6.0 * r2 / d.powi(4) - 2.0 / d.powi(3))
            * (-w2 / (4.0 * d * d)).exp(),
    )
}

pub fn second_derivative_check(
    w: Complex64,
    z: Complex64,
    n: usize,
    delta_alpha: f64,
) -> Result<SecondDerivative> {
    if !(1e-4..=1e-2).contains(&delta_alpha) {
        return Err(Error::InvalidParameter(format!(
            "delta_alpha must lie in [1e-4, 1e-2], got {delta_alpha}"
        )));
    }
    let base = SzegoParameters::new(w, 0.0, z)?;
    let sum_at = |alpha: f64| -> Result<Complex64> {
        let p = base.with_alpha(alpha);
        Ok(szego_determinant(&p, Symbol::G, n)? + szego_determinant(&p, Symbol::H, n)?)
    };
    let center = sum_at(0.0)?;
    let stencil =
        |d: f64| -> Result<Complex64> { Ok((sum_at(d)? - 2.0 * center + sum_at(-d)?) / (d * d)) };
    let coarse = stencil(delta_alpha)?;
    let fine = stencil(delta_alpha / 2.0)?;
    let (value, extrapolated) = if (coarse.re - fine.re).abs() > RICHARDSON_TRIGGER * fine.re.abs()
    {
        ((4.0 * fine - coarse) / 3.0, true)
    } else {
        (coarse, false)
    };
    Ok(SecondDerivative {
        finite_difference: value.re,
        finite_difference_im: value.im,
        closed_form: second_derivative_closed_form(w, z)?,
        extrapolated,
    })
}

/// Mean and standard errors of a complex Monte Carlo average.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexEstimate {
    pub mean: Complex64,
    pub std_error_re: f64,
    pub std_error_im: f64,
    pub samples: usize,
}

fn complex_estimate(values: &[Complex64]) -> ComplexEstimate {
    let m = values.len() as f64;
    let mean: Complex64 = values.iter().sum::<Complex64>() / m;
    let (vr, vi) = values.iter().fold((0.0, 0.0), |(a, b), v| {
        (a + (v.re - mean.re).powi(2), b + (v.im - mean.im).powi(2))
    });
    let denom = (m * (m - 1.0)).max(1.0);
    ComplexEstimate {
        mean,
        std_error_re: (vr / denom).sqrt(),
        std_error_im: (vi / denom).sqrt(),
        samples: values.len(),
    }
}

fn haar_average<T: Send>(
    n: usize,
    samples: usize,
    seed: u64,
    f: impl Fn(&crate::linalg::EigenPhaseSpectrum) -> T + Sync,
) -> Result<Vec<T>> {
    let cfg = EnsembleConfig::new(n, samples, seed)?;
    (0..samples)
        .into_par_iter()
        .map(|i| sample_eigenphases(n, cfg.sample_seed(i)).map(|s| f(&s)))
        .collect()
}

/// Monte Carlo average of `∏_j exp(i f(θ_j))` over Haar unitaries of size `n`.
pub fn heine_szego_mc(
    params: &SzegoParameters,
    which: Symbol,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<ComplexEstimate> {
    if samples < 2 {
        return Err(Error::InvalidParameter("need at least 2 samples".into()));
    }
    let values = haar_average(n, samples, seed, |s| {
        let total: f64 = s
            .phases()
            .iter()
            .map(|&t| symbol_value(params, which, t))
            .sum();
        Complex64::from_polar(1.0, total)
    })?;
    Ok(complex_estimate(&values))
}

/// Whether a moment lies in the regime where it equals `∏ k^{a_k} a_k!`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentRegime {
    /// `Σ k a_k <= n`.
    Exact,
    /// `Σ k a_k > n`: the closed form is only an upper bound.
    Inequality,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentEstimate {
    pub partition: Vec<u32>,
    pub estimate: f64,
    pub std_error: f64,
    /// `∏_k k^{a_k} a_k!`.
    pub exact: f64,
    pub regime: MomentRegime,
}

/// `∏_k k^{a_k} a_k!` where `a_k` counts the parts equal to `k`.
pub fn ds_moment_exact(partition: &[u32]) -> f64 {
    let mut counts = std::collections::BTreeMap::<u32, usize>::new();
    for &k in partition {
        *counts.entry(k).or_default() += 1;
    }
    let mut out = 1.0;
    for (k, a_k) in counts {
        for a in 1..=a_k {
            out *= k as f64 * a as f64;
        }
    }
    out
}

/// Monte Carlo estimate of `E ∏_k |Tr U^k|^{2 a_k}` over Haar unitaries.
pub fn ds_moment_mc(
    partition: &[u32],
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<MomentEstimate> {
    if partition.is_empty() || partition.contains(&0) {
        return Err(Error::InvalidParameter(
            "partition parts must be positive".into(),
        ));
    }
    if samples < 2 {
        return Err(Error::InvalidParameter("need at least 2 samples".into()));
    }
    let values = haar_average(n, samples, seed, |s| {
        partition
            .iter()
            .map(|&k| power_trace(s, k).norm_sqr())
            .product::<f64>()
    })?;
    let m = values.len() as f64;
    let mean = values.iter().sum::<f64>() / m;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1.0);
    let weight: u64 = partition.iter().map(|&k| k as u64).sum();
    Ok(MomentEstimate {
        partition: partition.to_vec(),
        estimate: mean,
        std_error: (var / m).sqrt(),
        exact: ds_moment_exact(partition),
        regime: if weight as usize <= n {
            MomentRegime::Exact
        } else {
            MomentRegime::Inequality
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(w: f64, alpha: f64, z: f64) -> SzegoParameters {
        SzegoParameters::new(Complex64::new(w, 0.0), alpha, Complex64::new(z, 0.0)).unwrap()
    }

    #[test]
    fn fourier_coefficient_examples() {
        let p =
            SzegoParameters::new(Complex64::new(0.3, -1.2), 0.7, Complex64::new(0.2, 0.4)).unwrap();
        assert_eq!(g_hat(&p, 1), -0.5 * p.w);
        assert_eq!(h_hat(&p, 1), -0.5 * p.w);
        assert_eq!(g_hat(&p, 0), Complex64::new(0.0, 0.0));
        assert_eq!(g_hat(&p, -3), g_hat(&p, 3).conj());
        let q = params(1.0, 2.0, 0.0);
        assert!((g_hat(&q, 2) - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        assert!((h_hat(&q, 2) - Complex64::new(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn closed_form_second_derivative_values() {
        let zero = Complex64::new(0.0, 0.0);
        assert!((second_derivative_closed_form(zero, zero).unwrap() + 2.0).abs() < 1e-15);
        let v = second_derivative_closed_form(zero, Complex64::new(0.5, 0.0)).unwrap();
        assert!(
            (v - (-1.5 / 0.31640625 - 2.0 / 0.421875)).abs() < 1e-12,
            "{v}"
        );
    }

    #[test]
    fn moment_exact_values() {
        assert_eq!(ds_moment_exact(&[1]), 1.0);
        assert_eq!(ds_moment_exact(&[2]), 2.0);
        assert_eq!(ds_moment_exact(&[1, 1]), 2.0);
        assert_eq!(ds_moment_exact(&[2, 1, 2]), 8.0);
    }

    #[test]
    fn parameter_validation() {
        assert!(matches!(
            SzegoParameters::new(Complex64::new(1.0, 0.0), 0.0, Complex64::new(1.0, 0.0)),
            Err(Error::Domain(_))
        ));
        let p = params(1.0, 0.0, 0.5);
        assert!(matches!(
            symbol_fourier(&p, Symbol::G, 4, 16),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            symbol_fourier(&p, Symbol::G, 4, 32),
            Err(Error::Resolution(_))
        ));
    }
}
