//! Ensemble statistics of critical points: the radial distribution `Ip(x)`,
//! its large-x asymptotics, and the spacing/distance correlation behind the
//! small-x conjecture `x ~ β π² S² / 2`.

use std::f64::consts::{PI, TAU};
use std::sync::atomic::{AtomicUsize, Ordering};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::critical::{critical_points, nearest_gap, CriticalPointSet};
use crate::error::{Error, Result};
use crate::haar::{sample_eigenphases, EnsembleConfig};
use crate::linalg::EigenPhaseSpectrum;

/// Default x grid: 200 geometric points on `[0.01, 100]`.
pub const DEFAULT_X_MIN: f64 = 0.01;
pub const DEFAULT_X_MAX: f64 = 100.0;
pub const DEFAULT_X_POINTS: usize = 200;

/// The β fit only uses points with `x` at or below this value.
pub const BETA_FIT_X_MAX: f64 = 1.0;

/// Minimum number of pooled values inside the window for
/// [`next_spacing_probe`].
pub const MIN_WINDOW_COUNT: usize = 100;
/// Number of log-spaced bins used by [`log_density_slope`].
pub const SLOPE_BINS: usize = 12;

/// Scaled distances `x = (n-1)(1 - |λ|)` of the critical points of one matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaledRadialSample {
    pub n: usize,
    pub x_values: Vec<f64>,
}

impl ScaledRadialSample {
    pub fn new(n: usize, x_values: Vec<f64>) -> Result<Self> {
        if let Some(x) = x_values.iter().find(|x| !(**x >= 0.0 && x.is_finite())) {
            return Err(Error::InvalidParameter(format!(
                "scaled distance {x} is not a nonnegative number"
            )));
        }
        Ok(Self { n, x_values })
    }
}

/// `x = (n-1)(1 - |z|)`, clamped at 0.
pub fn scaled_distance(n: usize, z: Complex64) -> f64 {
    (n.saturating_sub(1) as f64 * (1.0 - z.norm())).max(0.0)
}

pub fn scaled_distances(cps: &CriticalPointSet) -> ScaledRadialSample {
    let x_values = cps
        .points()
        .iter()
        .map(|z| scaled_distance(cps.n(), *z))
        .collect();
    ScaledRadialSample {
        n: cps.n(),
        x_values,
    }
}

/// Cumulative fraction of roots with `x <= x_grid[k]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IpxCurve {
    pub x_grid: Vec<f64>,
    pub values: Vec<f64>,
    /// Number of pooled roots; 0 for analytic curves.
    pub sample_count: u64,
}

impl IpxCurve {
    /// Binomial standard error `sqrt(p (1 - p) / count)` per grid point.
    pub fn std_errors(&self) -> Vec<f64> {
        let n = self.sample_count.max(1) as f64;
        self.values
            .iter()
            .map(|p| (p * (1.0 - p) / n).sqrt())
            .collect()
    }

    /// Linear interpolation on the grid, clamped to the end values.
    pub fn value_at(&self, x: f64) -> f64 {
        let g = &self.x_grid;
        let k = g.partition_point(|v| *v < x);
        if k == 0 {
            return self.values[0];
        }
        if k == g.len() {
            return self.values[g.len() - 1];
        }
        let t = (x - g[k - 1]) / (g[k] - g[k - 1]);
        self.values[k - 1] + t * (self.values[k] - self.values[k - 1])
    }
}

pub fn validate_grid(x_grid: &[f64]) -> Result<()> {
    if x_grid.is_empty() {
        return Err(Error::InvalidParameter("x grid is empty".into()));
    }
    if x_grid.iter().any(|x| !x.is_finite() || *x < 0.0) {
        return Err(Error::InvalidParameter(
            "x grid must be finite and nonnegative".into(),
        ));
    }
    if x_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(
            "x grid must be strictly increasing".into(),
        ));
    }
    Ok(())
}

/// `points` values geometrically spaced from `min` to `max` inclusive.
pub fn geometric_grid(min: f64, max: f64, points: usize) -> Result<Vec<f64>> {
    if !(min > 0.0 && max > min && max.is_finite()) || points < 2 {
        return Err(Error::InvalidParameter(format!(
            "geometric grid needs 0 < min < max and at least 2 points (got {min}, {max}, {points})"
        )));
    }
    let ratio = (max / min).ln() / (points - 1) as f64;
    let mut grid: Vec<f64> = (0..points)
        .map(|k| min * (ratio * k as f64).exp())
        .collect();
    grid[points - 1] = max;
    Ok(grid)
}

pub fn default_x_grid() -> Vec<f64> {
    geometric_grid(DEFAULT_X_MIN, DEFAULT_X_MAX, DEFAULT_X_POINTS).expect("valid default grid")
}

/// Integer histogram behind an [`IpxCurve`]. Accumulators merge by adding
/// counts, so any split of an ensemble yields the same curve.
#[derive(Debug, Clone, PartialEq)]
pub struct IpxAccumulator {
    x_grid: Vec<f64>,
    /// `bins[k]` counts values with `x_grid[k-1] < x <= x_grid[k]`; the last
    /// bin holds values beyond the grid.
    bins: Vec<u64>,
    total: u64,
}

impl IpxAccumulator {
    pub fn new(x_grid: Vec<f64>) -> Result<Self> {
        validate_grid(&x_grid)?;
        let bins = vec![0; x_grid.len() + 1];
        Ok(Self {
            x_grid,
            bins,
            total: 0,
        })
    }

    pub fn add(&mut self, sample: &ScaledRadialSample) {
        for &x in &sample.x_values {
            self.bins[self.x_grid.partition_point(|g| *g < x)] += 1;
        }
        self.total += sample.x_values.len() as u64;
    }

    /// # Panics
    /// If the grids differ.
    pub fn merge(mut self, other: &Self) -> Self {
        assert_eq!(
            self.x_grid, other.x_grid,
            "merging accumulators over different grids"
        );
        for (a, b) in self.bins.iter_mut().zip(&other.bins) {
            *a += b;
        }
        self.total += other.total;
        self
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn finish(&self) -> Result<IpxCurve> {
        if self.total == 0 {
            return Err(Error::Statistics("no roots to aggregate".into()));
        }
        let mut running = 0u64;
        let values = self.bins[..self.x_grid.len()]
            .iter()
            .map(|c| {
                running += c;
                running as f64 / self.total as f64
            })
            .collect();
        Ok(IpxCurve {
            x_grid: self.x_grid.clone(),
            values,
            sample_count: self.total,
        })
    }
}

pub fn empirical_ipx(samples: &[ScaledRadialSample], x_grid: &[f64]) -> Result<IpxCurve> {
    let mut acc = IpxAccumulator::new(x_grid.to_vec())?;
    for s in samples {
        acc.add(s);
    }
    acc.finish()
}

/// Large-x law `1 - 1/x` (negative below `x = 1`).
pub fn ipx_large_x(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("x must be positive, got {x}")));
    }
    Ok(1.0 - 1.0 / x)
}

fn check_radius(r: f64, n: usize) -> Result<()> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::Domain(format!("radius must lie in [0, 1), got {r}")));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n must be >= 2, got {n}")));
    }
    Ok(())
}

/// Asymptotic density of critical points `2 / (π (n-1) (1 - r²)²)`.
pub fn rho_asymptotic(r: f64, n: usize) -> Result<f64> {
    check_radius(r, n)?;
    let d = 1.0 - r * r;
    Ok(2.0 / (PI * (n - 1) as f64 * d * d))
}

/// Mass of [`rho_asymptotic`] in the disk of radius `r`:
/// `(2/(n-1)) (1/(1 - r²) - 1)`.
pub fn rho_asymptotic_mass(r: f64, n: usize) -> Result<f64> {
    check_radius(r, n)?;
    Ok(2.0 / (n - 1) as f64 * (1.0 / (1.0 - r * r) - 1.0))
}

/// Eigenvalue gaps rescaled to unit mean, `S = n Δθ / (2π)`.
pub fn rescaled_spacings(spectrum: &EigenPhaseSpectrum) -> Vec<f64> {
    let n = spectrum.n() as f64;
    spectrum.gaps().iter().map(|g| n * g / TAU).collect()
}

/// Next-nearest spacings `S₁ = n (θ_{j+2} - θ_j) / (2π)`, circularly.
pub fn next_nearest_spacings(spectrum: &EigenPhaseSpectrum) -> Vec<f64> {
    let gaps = rescaled_spacings(spectrum);
    let n = gaps.len();
    if n < 2 {
        return Vec::new();
    }
    (0..n).map(|j| gaps[j] + gaps[(j + 1) % n]).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpacingPair {
    /// Rescaled spacing of the gap assigned to the critical point.
    pub s: f64,
    /// Scaled distance of the critical point.
    pub x: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SpacingCorrelationSample {
    pub pairs: Vec<SpacingPair>,
}

/// Pairs each critical point with the gap whose midpoint direction is
/// angularly nearest.
pub fn spacing_correlation(
    spectrum: &EigenPhaseSpectrum,
    cps: &CriticalPointSet,
) -> SpacingCorrelationSample {
    let spacings = rescaled_spacings(spectrum);
    let radial = scaled_distances(cps);
    let pairs = cps
        .points()
        .iter()
        .zip(&radial.x_values)
        .map(|(z, &x)| SpacingPair {
            s: spacings[nearest_gap(spectrum, *z)],
            x,
        })
        .collect();
    SpacingCorrelationSample { pairs }
}

/// Least-squares slope of `x` against `u = π² S² / 2` through the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaFit {
    pub beta: f64,
    pub std_error: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// Number of pairs used.
    pub count: usize,
}

/// Fits `x = β u` over pairs with `x <= x_max`; the interval is β ± 1.96 SE.
pub fn fit_beta<'a>(
    pairs: impl IntoIterator<Item = &'a SpacingPair>,
    x_max: f64,
) -> Result<BetaFit> {
    let used: Vec<(f64, f64)> = pairs
        .into_iter()
        .filter(|p| p.x <= x_max)
        .map(|p| (PI * PI * p.s * p.s / 2.0, p.x))
        .collect();
    let m = used.len();
    let suu: f64 = used.iter().map(|(u, _)| u * u).sum();
    if m < 2 || suu == 0.0 {
        return Err(Error::Statistics(format!(
            "{m} pairs with x <= {x_max}; need at least 2"
        )));
    }
    let sux: f64 = used.iter().map(|(u, x)| u * x).sum();
    let beta = sux / suu;
    let rss: f64 = used.iter().map(|(u, x)| (x - beta * u).powi(2)).sum();
    let std_error = (rss / (m - 1) as f64 / suu).sqrt();
    Ok(BetaFit {
        beta,
        std_error,
        ci_low: beta - 1.96 * std_error,
        ci_high: beta + 1.96 * std_error,
        count: m,
    })
}

/// Slope of log density against log value over a window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeEstimate {
    pub slope: f64,
    pub std_error: f64,
    pub bins_used: usize,
    pub count_in_window: usize,
}

/// Weighted least-squares slope of `ln(density)` against `ln(s)` using
/// [`SLOPE_BINS`] log-spaced bins on `window`; weights are bin counts
/// (the inverse variance of a log count).
pub fn log_density_slope(
    values: impl IntoIterator<Item = f64>,
    window: (f64, f64),
) -> Result<SlopeEstimate> {
    let (lo, hi) = window;
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "window must satisfy 0 < lo < hi, got ({lo}, {hi})"
        )));
    }
    let (llo, lhi) = (lo.ln(), hi.ln());
    let width = (lhi - llo) / SLOPE_BINS as f64;
    let mut counts = [0u64; SLOPE_BINS];
    for v in values {
        if v >= lo && v < hi {
            let k = (((v.ln() - llo) / width) as usize).min(SLOPE_BINS - 1);
            counts[k] += 1;
        }
    }
    let count_in_window = counts.iter().sum::<u64>() as usize;
    let points: Vec<(f64, f64, f64)> = counts
        .iter()
        .enumerate()
        .filter(|(_, c)| **c > 0)
        .map(|(k, &c)| {
            let a = (llo + k as f64 * width).exp();
            let b = (llo + (k + 1) as f64 * width).exp();
            ((a * b).sqrt().ln(), (c as f64 / (b - a)).ln(), c as f64)
        })
        .collect();
    if points.len() < 3 || count_in_window < MIN_WINDOW_COUNT {
        return Err(Error::Statistics(format!(
            "{count_in_window} values in {} nonempty bins of window ({lo}, {hi}); need {MIN_WINDOW_COUNT} values in 3 bins",
            points.len()
        )));
    }
    let w: f64 = points.iter().map(|p| p.2).sum();
    let mx = points.iter().map(|p| p.2 * p.0).sum::<f64>() / w;
    let my = points.iter().map(|p| p.2 * p.1).sum::<f64>() / w;
    let sxx: f64 = points.iter().map(|p| p.2 * (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| p.2 * (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    // With inverse-variance weights the slope variance is 1 / Sxx.
    Ok(SlopeEstimate {
        slope,
        std_error: (1.0 / sxx).sqrt(),
        bins_used: points.len(),
        count_in_window,
    })
}

/// Log-log slope of the pooled next-nearest-spacing density on `window`.
pub fn next_spacing_probe(
    spectra: &[EigenPhaseSpectrum],
    window: (f64, f64),
) -> Result<SlopeEstimate> {
    log_density_slope(spectra.iter().flat_map(next_nearest_spacings), window)
}

/// One ensemble member with its critical points.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixSample {
    pub spectrum: EigenPhaseSpectrum,
    pub critical: CriticalPointSet,
}

/// Samples every ensemble member and solves for its critical points, in
/// index order. `progress` receives the number of finished members.
pub fn sample_ensemble(
    cfg: &EnsembleConfig,
    progress: Option<&(dyn Fn(usize) + Sync)>,
) -> Result<Vec<MatrixSample>> {
    if cfg.n < 2 {
        return Err(Error::InvalidParameter(format!(
            "critical points need n >= 2, got {}",
            cfg.n
        )));
    }
    let done = AtomicUsize::new(0);
    (0..cfg.num_samples)
        .into_par_iter()
        .map(|i| {
            let spectrum = sample_eigenphases(cfg.n, cfg.sample_seed(i))?;
            let critical = critical_points(&spectrum)?;
            if let Some(cb) = progress {
                cb(done.fetch_add(1, Ordering::Relaxed) + 1);
            }
            Ok(MatrixSample { spectrum, critical })
        })
        .collect()
}

/// Empirical `Ip` over a set of ensemble members.
pub fn ensemble_ipx(samples: &[MatrixSample], x_grid: &[f64]) -> Result<IpxCurve> {
    let acc = IpxAccumulator::new(x_grid.to_vec())?;
    samples
        .par_iter()
        .fold(
            || acc.clone(),
            |mut a, s| {
                a.add(&scaled_distances(&s.critical));
                a
            },
        )
        .reduce(|| acc.clone(), |a, b| a.merge(&b))
        .finish()
}
