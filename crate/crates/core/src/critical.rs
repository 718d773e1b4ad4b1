//! Roots of `Z'(U, z)`, the derivative of the characteristic polynomial,
//! computed from the eigenphases alone.
//!
//! The critical points are the zeros of the logarithmic derivative
//! `S(z) = Σ 1/(z - w_j)` with `w_j = e^{iθ_j}`. The solver runs a
//! simultaneous Aberth–Ehrlich iteration whose Newton correction for
//! `q = Z'` is written through `S` and `T(z) = Σ 1/(z - w_j)^2`:
//!
//! ```text
//! q / q' = Z' / Z'' = S / (S^2 - T)
//! ```
//!
//! so no monomial coefficients are ever formed.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, ComplexDenseMatrix, EigenPhaseSpectrum};

/// Stop the Aberth sweeps once no iterate moves further than this.
pub const ABERTH_STEP_TOL: f64 = 1e-13;
pub const ABERTH_MAX_SWEEPS: usize = 200;
/// Newton steps on `S` applied to each simple root after the sweeps.
pub const POLISH_STEPS: usize = 3;
/// Iterates closer than this are treated as a double root.
pub const CLUSTER_RADIUS: f64 = 1e-10;
/// Aberth converges to a double root only to about `sqrt(eps)`; pairs this
/// close on which `S` is flat are merged into their centroid first.
pub const MERGE_RADIUS: f64 = 1e-6;
/// `S(z)` is refused closer than this to an eigenvalue.
pub const POLE_RADIUS: f64 = 1e-14;
/// Minimum angular separation between eigenphases.
pub const MIN_PHASE_SEPARATION: f64 = 1e-12;
/// Largest spectrum accepted by [`critical_points_oracle`].
pub const ORACLE_MAX_N: usize = 64;

/// Residual bound per point, `1e-8 n`.
pub fn residual_tolerance(n: usize) -> f64 {
    1e-8 * n as f64
}

/// The `n - 1` critical points of one characteristic polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalPointSet {
    n: usize,
    points: Vec<Complex64>,
    residuals: Vec<f64>,
    multiplicity: Vec<u8>,
}

impl CriticalPointSet {
    /// Dimension of the source matrix.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    /// `|S(λ)|` for simple roots; `|Z'(λ)| / n` for points flagged as part
    /// of a double root.
    pub fn residuals(&self) -> &[f64] {
        &self.residuals
    }

    /// 1 for a simple root, 2 for each member of a collided pair.
    pub fn multiplicity(&self) -> &[u8] {
        &self.multiplicity
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// `(S(z), T(z))` for the eigenvalues `w`.
#[inline]
fn log_derivative_sums(w: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut s = Complex64::new(0.0, 0.0);
    let mut t = Complex64::new(0.0, 0.0);
    for wj in w {
        let r = (z - wj).inv();
        s += r;
        t += r * r;
    }
    (s, t)
}

/// `Σ_j 1/(z - e^{iθ_j})`, the logarithmic derivative of `Z(U, z)`.
pub fn log_derivative(spectrum: &EigenPhaseSpectrum, z: Complex64) -> Result<Complex64> {
    let w = spectrum.eigenvalues();
    if let Some(wj) = w.iter().find(|wj| (z - *wj).norm() < POLE_RADIUS) {
        return Err(Error::Pole(format!("z = {z} lies on the eigenvalue {wj}")));
    }
    Ok(log_derivative_sums(&w, z).0)
}

/// `|Z'(z)| / n = |Z(z)| |S(z)| / n`, with `|Z|` accumulated in log space.
fn monic_derivative_value(w: &[Complex64], z: Complex64, s: Complex64) -> f64 {
    let log_abs: f64 = w.iter().map(|wj| (z - wj).norm().ln()).sum();
    (log_abs.exp() * s.norm()) / w.len() as f64
}

fn check_separation(spectrum: &EigenPhaseSpectrum) -> Result<()> {
    let n = spectrum.n();
    if n < 2 {
        return Err(Error::Precondition(format!(
            "Z' has no roots for n = {n}; need n >= 2"
        )));
    }
    let gaps = spectrum.gaps();
    if let Some((j, g)) = gaps
        .iter()
        .enumerate()
        .find(|(_, g)| **g < MIN_PHASE_SEPARATION)
    {
        return Err(Error::Precondition(format!(
            "eigenphases {j} and {} are {g:.3e} apart (degenerate spectrum)",
            (j + 1) % n
        )));
    }
    Ok(())
}

/// Starting points: midpoints of circularly adjacent eigenvalues pulled in
/// by `1 - 1/(4n)`, dropping the widest gap.
fn initial_iterates(spectrum: &EigenPhaseSpectrum) -> Vec<Complex64> {
    let n = spectrum.n();
    let w = spectrum.eigenvalues();
    let gaps = spectrum.gaps();
    let widest = gaps
        .iter()
        .enumerate()
        .fold(0, |best, (j, g)| if *g > gaps[best] { j } else { best });
    let pull = 1.0 - 1.0 / (4.0 * n as f64);
    (0..n)
        .filter(|&j| j != widest)
        .map(|j| (w[j] + w[(j + 1) % n]) * 0.5 * pull)
        .collect()
}

/// Critical points of `Z(U, z)` from its eigenphases.
///
/// Aberth–Ehrlich sweeps until every iterate moves less than
/// [`ABERTH_STEP_TOL`] (or [`ABERTH_MAX_SWEEPS`] is reached), followed by
/// [`POLISH_STEPS`] Newton steps on `S` for each simple root. Iterates that
/// collide within [`CLUSTER_RADIUS`] (after [`MERGE_RADIUS`] merging) are
/// reported as a double root and judged on the polynomial value instead of
/// `S`.
pub fn critical_points(spectrum: &EigenPhaseSpectrum) -> Result<CriticalPointSet> {
    check_separation(spectrum)?;
    let n = spectrum.n();
    let w = spectrum.eigenvalues();
    let mut z = initial_iterates(spectrum);
    let m = z.len();
    let mut next = z.clone();

    let mut sweeps = 0;
    while sweeps < ABERTH_MAX_SWEEPS {
        sweeps += 1;
        let mut max_step = 0.0_f64;
        for k in 0..m {
            let zk = z[k];
            let (s, t) = log_derivative_sums(&w, zk);
            let denom = s * s - t;
            let newton = s / denom;
            if !newton.re.is_finite() || !newton.im.is_finite() {
                // On an eigenvalue or at a zero of Z''; nudge towards the origin.
                next[k] = zk * (1.0 - 1e-9);
                max_step = f64::INFINITY;
                continue;
            }
            let mut repulsion = Complex64::new(0.0, 0.0);
            for (j, zj) in z.iter().enumerate() {
                if j != k && zj != &zk {
                    repulsion += (zk - zj).inv();
                }
            }
            let corr = newton / (Complex64::new(1.0, 0.0) - newton * repulsion);
            let corr = if corr.re.is_finite() && corr.im.is_finite() {
                corr
            } else {
                newton
            };
            next[k] = zk - corr;
            max_step = max_step.max(corr.norm());
        }
        std::mem::swap(&mut z, &mut next);
        if max_step <= ABERTH_STEP_TOL {
            break;
        }
    }

    let tol = residual_tolerance(n);
    for i in 0..m {
        for j in i + 1..m {
            let d = (z[i] - z[j]).norm();
            if d == 0.0 || d >= MERGE_RADIUS {
                continue;
            }
            let c = (z[i] + z[j]) * 0.5;
            let (s, t) = log_derivative_sums(&w, c);
            if s.norm() <= tol && t.norm() * d <= tol {
                z[i] = c;
                z[j] = c;
            }
        }
    }

    let mut multiplicity = vec![1u8; m];
    for i in 0..m {
        for j in i + 1..m {
            if (z[i] - z[j]).norm() < CLUSTER_RADIUS {
                multiplicity[i] = 2;
                multiplicity[j] = 2;
            }
        }
    }

    let mut residuals = Vec::with_capacity(m);
    for k in 0..m {
        let (mut s, mut t) = log_derivative_sums(&w, z[k]);
        if multiplicity[k] == 1 {
            for _ in 0..POLISH_STEPS {
                let cand = z[k] + s / t;
                if !cand.re.is_finite() || !cand.im.is_finite() {
                    break;
                }
                let (s2, t2) = log_derivative_sums(&w, cand);
                if s2.norm() >= s.norm() {
                    break;
                }
                z[k] = cand;
                s = s2;
                t = t2;
            }
            residuals.push(s.norm());
        } else {
            residuals.push(monic_derivative_value(&w, z[k], s));
        }
    }

    let worst = residuals
        .iter()
        .enumerate()
        .fold((0, 0.0_f64), |acc, (i, r)| {
            if !r.is_finite() || *r > acc.1 {
                (i, *r)
            } else {
                acc
            }
        });
    if !(worst.1 <= tol) {
        return Err(Error::Convergence {
            iterations: sweeps,
            detail: format!(
                "worst residual {:.3e} at iterate {} = {} (tolerance {tol:.1e})",
                worst.1, worst.0, z[worst.0]
            ),
        });
    }
    if let Some((i, p)) = z.iter().enumerate().find(|(_, p)| p.norm() >= 1.0) {
        return Err(Error::Convergence {
            iterations: sweeps,
            detail: format!("iterate {i} = {p} left the open unit disk"),
        });
    }

    Ok(CriticalPointSet {
        n,
        points: z,
        residuals,
        multiplicity,
    })
}

/// Independent route: the nonzero part of the spectrum of `D (I - J/n)`,
/// `D = diag(e^{iθ_j})`, `J` the all-ones matrix. That matrix has rank
/// `n - 1`; its eigenvalues are the roots of `Z'` together with one zero,
/// which is removed (the eigenvalue of smallest modulus).
pub fn critical_points_oracle(spectrum: &EigenPhaseSpectrum) -> Result<CriticalPointSet> {
    let n = spectrum.n();
    if !(2..=ORACLE_MAX_N).contains(&n) {
        return Err(Error::Precondition(format!(
            "oracle supports 2 <= n <= {ORACLE_MAX_N}, got {n}"
        )));
    }
    let w = spectrum.eigenvalues();
    let inv_n = 1.0 / n as f64;
    let a = ComplexDenseMatrix::from_fn(n, n, |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        w[i] * (delta - inv_n)
    });
    let mut eig = eigenvalues(&a)?;
    let smallest =
        eig.iter().enumerate().fold(
            0,
            |best, (i, z)| if z.norm() < eig[best].norm() { i } else { best },
        );
    eig.remove(smallest);
    let residuals = eig
        .iter()
        .map(|z| log_derivative_sums(&w, *z).0.norm())
        .collect();
    Ok(CriticalPointSet {
        n,
        multiplicity: vec![1; eig.len()],
        points: eig,
        residuals,
    })
}

/// Index of the circular gap `(θ_j, θ_{j+1})` whose midpoint direction is
/// angularly closest to `arg(z)`. Ties go to the lower index.
pub fn nearest_gap(spectrum: &EigenPhaseSpectrum, z: Complex64) -> usize {
    let phases = spectrum.phases();
    let n = phases.len();
    let arg = z.arg();
    let mut best = (0usize, f64::INFINITY);
    for j in 0..n {
        let hi = if j + 1 < n {
            phases[j + 1]
        } else {
            phases[0] + TAU
        };
        let mid = 0.5 * (phases[j] + hi);
        let d = (arg - mid).rem_euclid(TAU);
        let d = d.min(TAU - d);
        if d < best.1 {
            best = (j, d);
        }
    }
    best.0
}

/// Index of the circular gap whose arc contains `arg(z)`.
pub fn containing_gap(spectrum: &EigenPhaseSpectrum, z: Complex64) -> usize {
    let phases = spectrum.phases();
    let n = phases.len();
    let arg = z.arg().rem_euclid(TAU);
    match phases.partition_point(|p| *p <= arg) {
        0 => n - 1,
        k => k - 1,
    }
}
