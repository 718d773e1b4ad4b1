//! Dense complex linear algebra: Householder QR, Hessenberg/shifted-QR
//! eigenvalues, LU determinants.
//!
//! Everything here works on small-to-moderate dense matrices (n up to a
//! few hundred) held in row-major order. Nothing exploits unitary structure
//! beyond the final projection of eigenvalues onto the unit circle.

use std::f64::consts::TAU;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Deflation threshold for the shifted QR iteration, relative to the two
/// neighbouring diagonal entries.
pub const DEFLATION_TOL: f64 = 1e-14;

/// Sweep budget per unit of matrix dimension.
pub const SWEEPS_PER_DIM: usize = 40;

/// Maximum allowed deviation of a raw eigenvalue modulus from 1 before it is
/// projected onto the unit circle.
pub const UNIMODULAR_TOL: f64 = 1e-8;

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexDenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexDenseMatrix {
    /// Builds a matrix from row-major entries. Rejects empty shapes, length
    /// mismatches and non-finite entries.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("empty shape {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(pos) = data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidParameter(format!(
                "non-finite entry at ({}, {})",
                pos / cols,
                pos % cols
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix shape");
        Self {
            rows,
            cols,
            data: vec![Complex64::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![Complex64::new(1.0, 0.0); n])
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
        m
    }

    /// Builds an `rows x cols` matrix from a closure over `(row, col)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (o, b) in out_row.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |(a - b)_ij|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `||u^H u - I||_max`; infinite for non-square input.
    pub fn unitarity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                let mut acc = Complex64::zero();
                for k in 0..n {
                    acc += self[(k, i)].conj() * self[(k, j)];
                }
                if i == j {
                    acc -= 1.0;
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self[(i, j)].is_zero()))
    }

    fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)].is_zero()))
    }
}

impl Index<(usize, usize)> for ComplexDenseMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexDenseMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Sorted eigenvalue phases of a unitary matrix, each in `[0, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPhaseSpectrum {
    phases: Vec<f64>,
}

impl EigenPhaseSpectrum {
    /// Accepts phases that are already canonical: finite, in `[0, 2π)`, and
    /// nondecreasing.
    pub fn new(phases: Vec<f64>) -> Result<Self> {
        if phases.is_empty() {
            return Err(Error::InvalidParameter("empty spectrum".into()));
        }
        if let Some(p) = phases.iter().find(|p| !(0.0..TAU).contains(*p)) {
            return Err(Error::InvalidParameter(format!(
                "phase {p} outside [0, 2pi)"
            )));
        }
        if phases.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidParameter("phases not sorted".into()));
        }
        Ok(Self { phases })
    }

    /// Reduces arbitrary real phases modulo 2π and sorts them. Ties keep
    /// their input order.
    pub fn from_unsorted(phases: impl IntoIterator<Item = f64>) -> Result<Self> {
        let mut canon = Vec::new();
        for p in phases {
            if !p.is_finite() {
                return Err(Error::InvalidParameter(format!("non-finite phase {p}")));
            }
            canon.push(canonical_phase(p));
        }
        canon.sort_by(|a, b| a.total_cmp(b));
        Self::new(canon)
    }

    pub fn n(&self) -> usize {
        self.phases.len()
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    /// The eigenvalues `e^{iθ_j}`.
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.phases
            .iter()
            .map(|&t| Complex64::from_polar(1.0, t))
            .collect()
    }

    /// Spectrum of `e^{iφ} U`.
    pub fn rotated(&self, phi: f64) -> Self {
        Self::from_unsorted(self.phases.iter().map(|t| t + phi)).expect("finite phases")
    }

    /// Spectrum of the complex conjugate matrix, `θ -> 2π - θ`.
    pub fn reflected(&self) -> Self {
        Self::from_unsorted(self.phases.iter().map(|t| -t)).expect("finite phases")
    }

    /// Circular gaps `θ_{j+1} - θ_j`, the last one wrapping through 2π.
    pub fn gaps(&self) -> Vec<f64> {
        let n = self.n();
        (0..n)
            .map(|j| {
                if j + 1 < n {
                    self.phases[j + 1] - self.phases[j]
                } else {
                    self.phases[0] + TAU - self.phases[n - 1]
                }
            })
            .collect()
    }
}

/// Reduces a phase to `[0, 2π)`.
pub fn canonical_phase(p: f64) -> f64 {
    let r = p.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Complex Householder reflector `I - 2 v v^H` mapping `x` onto a multiple of
/// the first unit vector. Returns `None` when `x` is already of that form.
fn householder_vector(x: &[Complex64]) -> Option<Vec<Complex64>> {
    let tail: f64 = x[1..].iter().map(|z| z.norm_sqr()).sum();
    if tail == 0.0 {
        return None;
    }
    let norm = (x[0].norm_sqr() + tail).sqrt();
    let phase = if x[0].is_zero() {
        Complex64::new(1.0, 0.0)
    } else {
        x[0] / x[0].norm()
    };
    let alpha = -phase * norm;
    let mut v: Vec<Complex64> = x.to_vec();
    v[0] -= alpha;
    let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut v {
        *z /= vnorm;
    }
    Some(v)
}

/// Applies `I - 2 v v^H` from the left to rows `offset..offset+v.len()`,
/// restricted to columns `col_from..`.
fn reflect_rows(m: &mut ComplexDenseMatrix, v: &[Complex64], offset: usize, col_from: usize) {
    let cols = m.cols;
    let mut w = vec![Complex64::zero(); cols - col_from];
    for (i, vi) in v.iter().enumerate() {
        let row = &m.data[(offset + i) * cols + col_from..(offset + i + 1) * cols];
        let c = vi.conj();
        for (wj, r) in w.iter_mut().zip(row) {
            *wj += c * r;
        }
    }
    for (i, vi) in v.iter().enumerate() {
        let s = 2.0 * vi;
        let row = &mut m.data[(offset + i) * cols + col_from..(offset + i + 1) * cols];
        for (r, wj) in row.iter_mut().zip(&w) {
            *r -= s * wj;
        }
    }
}

/// Applies `I - 2 v v^H` from the right to columns `offset..offset+v.len()`,
/// restricted to rows `row_range`.
fn reflect_cols(
    m: &mut ComplexDenseMatrix,
    v: &[Complex64],
    offset: usize,
    row_range: std::ops::Range<usize>,
) {
    let cols = m.cols;
    for i in row_range {
        let row = &mut m.data[i * cols + offset..i * cols + offset + v.len()];
        let t: Complex64 = row.iter().zip(v).map(|(r, vj)| r * vj).sum();
        let s = 2.0 * t;
        for (r, vj) in row.iter_mut().zip(v) {
            *r -= s * vj.conj();
        }
    }
}

/// Householder QR factorization of a square matrix: `a = q r` with `q`
/// unitary and `r` upper triangular. Columns whose sub-diagonal part is
/// already zero are left untouched, so triangular input passes through.
pub fn householder_qr(a: &ComplexDenseMatrix) -> Result<(ComplexDenseMatrix, ComplexDenseMatrix)> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "QR needs a square matrix, got {}x{}",
            a.rows, a.cols
        )));
    }
    let n = a.rows;
    let mut r = a.clone();
    let mut q = ComplexDenseMatrix::identity(n);
    for k in 0..n.saturating_sub(1) {
        let x: Vec<Complex64> = (k..n).map(|i| r[(i, k)]).collect();
        let Some(v) = householder_vector(&x) else {
            continue;
        };
        reflect_rows(&mut r, &v, k, k);
        reflect_cols(&mut q, &v, k, 0..n);
        for i in k + 1..n {
            r[(i, k)] = Complex64::zero();
        }
    }
    Ok((q, r))
}

/// Unitary similarity reduction to upper Hessenberg form.
pub fn hessenberg(a: &ComplexDenseMatrix) -> Result<ComplexDenseMatrix> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "Hessenberg reduction needs a square matrix, got {}x{}",
            a.rows, a.cols
        )));
    }
    let n = a.rows;
    let mut h = a.clone();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let Some(v) = householder_vector(&x) else {
            continue;
        };
        reflect_rows(&mut h, &v, k + 1, k);
        reflect_cols(&mut h, &v, k + 1, 0..n);
        for i in k + 2..n {
            h[(i, k)] = Complex64::zero();
        }
    }
    Ok(h)
}

/// Rotation `[[c, s], [-conj(s), c]]` annihilating the second component of
/// `(x, y)`.
#[derive(Clone, Copy)]
struct Givens {
    c: f64,
    s: Complex64,
}

impl Givens {
    fn new(x: Complex64, y: Complex64) -> Self {
        let ay = y.norm();
        if ay == 0.0 {
            return Self {
                c: 1.0,
                s: Complex64::zero(),
            };
        }
        let ax = x.norm();
        if ax == 0.0 {
            return Self {
                c: 0.0,
                s: y.conj() / ay,
            };
        }
        let norm = ax.hypot(ay);
        Self {
            c: ax / norm,
            s: (x / ax) * y.conj() / norm,
        }
    }
}

/// Eigenvalue of the trailing 2x2 block `[[a, b], [c, d]]` closer to `d`.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let p = (a - d) * 0.5;
    let bc = b * c;
    let s = (p * p + bc).sqrt();
    let denom = if (p + s).norm() >= (p - s).norm() {
        p + s
    } else {
        p - s
    };
    if denom.is_zero() {
        d
    } else {
        d - bc / denom
    }
}

/// Eigenvalues of a general square complex matrix, by Hessenberg reduction
/// followed by single-shift (Wilkinson) QR iteration with deflation.
///
/// Returned in the order in which they deflate (bottom of the Hessenberg
/// matrix upwards), which is deterministic for a given input.
pub fn eigenvalues(a: &ComplexDenseMatrix) -> Result<Vec<Complex64>> {
    let mut h = hessenberg(a)?;
    let n = h.rows;
    let scale = h.max_abs();
    let floor = f64::EPSILON * scale.max(f64::MIN_POSITIVE);
    let max_sweeps = SWEEPS_PER_DIM * n.max(1);
    let mut eig = vec![Complex64::zero(); n];
    let mut hi = n - 1;
    let mut sweeps = 0usize;
    let mut since_deflation = 0usize;

    while hi > 0 {
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let diag = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if sub <= (DEFLATION_TOL * diag).max(floor) {
                h[(lo, lo - 1)] = Complex64::zero();
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig[hi] = h[(hi, hi)];
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        if sweeps >= max_sweeps {
            return Err(Error::Convergence {
                iterations: sweeps,
                detail: format!(
                    "active block {lo}..={hi}, trailing subdiagonal {:.3e}",
                    h[(hi, hi - 1)].norm()
                ),
            });
        }
        sweeps += 1;
        since_deflation += 1;

        let shift = if since_deflation % 10 == 0 {
            h[(hi, hi)] + 0.75 * h[(hi, hi - 1)].re.abs()
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };
        qr_step(&mut h, lo, hi, shift);
    }
    eig[0] = h[(0, 0)];
    Ok(eig)
}

/// One explicit shifted QR step `H - μI = QR, H <- RQ + μI` on the block
/// `lo..=hi` of an upper Hessenberg matrix.
fn qr_step(h: &mut ComplexDenseMatrix, lo: usize, hi: usize, shift: Complex64) {
    for i in lo..=hi {
        h[(i, i)] -= shift;
    }
    let mut rots = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let g = Givens::new(h[(k, k)], h[(k + 1, k)]);
        for j in k..=hi {
            let x = h[(k, j)];
            let y = h[(k + 1, j)];
            h[(k, j)] = g.c * x + g.s * y;
            h[(k + 1, j)] = -g.s.conj() * x + g.c * y;
        }
        h[(k + 1, k)] = Complex64::zero();
        rots.push(g);
    }
    for (idx, g) in rots.iter().enumerate() {
        let k = lo + idx;
        for i in lo..=(k + 1).min(hi) {
            let x = h[(i, k)];
            let y = h[(i, k + 1)];
            h[(i, k)] = x * g.c + y * g.s.conj();
            h[(i, k + 1)] = -x * g.s + y * g.c;
        }
    }
    for i in lo..=hi {
        h[(i, i)] += shift;
    }
}

/// Eigenphases of a unitary matrix.
///
/// The input must satisfy `||u^H u - I||_max <= 1e-10 n`. Raw eigenvalue
/// moduli must lie within [`UNIMODULAR_TOL`] of 1; they are then projected
/// onto the unit circle and their phases sorted into `[0, 2π)`.
pub fn eigenphases(u: &ComplexDenseMatrix) -> Result<EigenPhaseSpectrum> {
    if !u.is_square() {
        return Err(Error::Dimension(format!(
            "eigenphases need a square matrix, got {}x{}",
            u.rows, u.cols
        )));
    }
    let n = u.rows;
    let defect = u.unitarity_defect();
    if defect > 1e-10 * n as f64 {
        return Err(Error::Precondition(format!(
            "matrix is not unitary: ||u^H u - I||_max = {defect:.3e}"
        )));
    }
    let eig = eigenvalues(u)?;
    if let Some(bad) = eig.iter().find(|z| (z.norm() - 1.0).abs() > UNIMODULAR_TOL) {
        return Err(Error::Convergence {
            iterations: 0,
            detail: format!("eigenvalue {bad} has modulus {:.12}", bad.norm()),
        });
    }
    EigenPhaseSpectrum::from_unsorted(eig.iter().map(|z| z.arg()))
}

/// Determinant by LU factorization with partial pivoting. Triangular input
/// returns the exact product of its diagonal; singular input returns 0.
pub fn determinant(a: &ComplexDenseMatrix) -> Result<Complex64> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "determinant needs a square matrix, got {}x{}",
            a.rows, a.cols
        )));
    }
    let n = a.rows;
    if a.is_upper_triangular() || a.is_lower_triangular() {
        return Ok((0..n).map(|i| a[(i, i)]).product());
    }
    let mut lu = a.clone();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let (p, pmax) = (k..n)
            .map(|i| (i, lu[(i, k)].norm()))
            .fold(
                (k, -1.0),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            );
        if pmax == 0.0 {
            return Ok(Complex64::zero());
        }
        if p != k {
            for j in 0..n {
                lu.data.swap(k * n + j, p * n + j);
            }
            det = -det;
        }
        let pivot = lu[(k, k)];
        det *= pivot;
        for i in k + 1..n {
            let f = lu[(i, k)] / pivot;
            if f.is_zero() {
                continue;
            }
            for j in k + 1..n {
                let t = lu[(k, j)];
                lu[(i, j)] -= f * t;
            }
        }
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn new_rejects_bad_shapes() {
        assert!(ComplexDenseMatrix::new(2, 2, vec![c(1.0, 0.0); 3]).is_err());
        assert!(ComplexDenseMatrix::new(0, 2, vec![]).is_err());
        assert!(ComplexDenseMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn qr_of_identity_is_identity() {
        let (q, r) = householder_qr(&ComplexDenseMatrix::identity(3)).unwrap();
        assert_eq!(q, ComplexDenseMatrix::identity(3));
        assert_eq!(r, ComplexDenseMatrix::identity(3));
    }

    #[test]
    fn qr_of_diagonal_keeps_magnitudes() {
        let a = ComplexDenseMatrix::from_diagonal(&[c(2.0, 0.0), c(3.0, 0.0)]);
        let (_, r) = householder_qr(&a).unwrap();
        assert!((r[(0, 0)].norm() - 2.0).abs() < 1e-15);
        assert!((r[(1, 1)].norm() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn qr_rejects_rectangular() {
        let a = ComplexDenseMatrix::zeros(2, 3);
        assert!(matches!(householder_qr(&a), Err(Error::Dimension(_))));
    }

    #[test]
    fn eigenphases_of_simple_unitaries() {
        let s = eigenphases(&ComplexDenseMatrix::identity(4)).unwrap();
        assert_eq!(s.phases(), &[0.0; 4]);

        let d = ComplexDenseMatrix::from_diagonal(&[c(1.0, 0.0), c(0.0, 1.0)]);
        let s = eigenphases(&d).unwrap();
        assert!(s.phases()[0].abs() < 1e-15);
        assert!((s.phases()[1] - FRAC_PI_2).abs() < 1e-15);

        let p = ComplexDenseMatrix::new(
            2,
            2,
            vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        )
        .unwrap();
        let s = eigenphases(&p).unwrap();
        assert!(s.phases()[0].abs() < 1e-14 || (s.phases()[0] - TAU).abs() < 1e-14);
        assert!((s.phases()[1] - PI).abs() < 1e-14);
    }

    #[test]
    fn eigenphases_rejects_non_unitary() {
        let a = ComplexDenseMatrix::from_diagonal(&[c(2.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(eigenphases(&a), Err(Error::Precondition(_))));
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(
            determinant(&ComplexDenseMatrix::identity(5)).unwrap(),
            c(1.0, 0.0)
        );
        let d = ComplexDenseMatrix::from_diagonal(&[c(2.0, 0.0), c(0.0, 1.0)]);
        assert_eq!(determinant(&d).unwrap(), c(0.0, 2.0));
        let sing = ComplexDenseMatrix::new(
            2,
            2,
            vec![c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)],
        )
        .unwrap();
        assert!(determinant(&sing).unwrap().norm() < 1e-15);
    }

    #[test]
    fn triangular_determinant_is_exact() {
        let a = ComplexDenseMatrix::new(
            3,
            3,
            vec![
                c(0.1, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(9.0, 1.0),
                c(0.3, 0.2),
                c(0.0, 0.0),
                c(7.0, 0.0),
                c(5.0, 5.0),
                c(0.7, -0.1),
            ],
        )
        .unwrap();
        let exact = c(0.1, 0.0) * c(0.3, 0.2) * c(0.7, -0.1);
        assert_eq!(determinant(&a).unwrap(), exact);
    }

    #[test]
    fn spectrum_validation_and_gaps() {
        assert!(EigenPhaseSpectrum::new(vec![1.0, 0.5]).is_err());
        assert!(EigenPhaseSpectrum::new(vec![TAU]).is_err());
        let s = EigenPhaseSpectrum::from_unsorted([3.0, -1.0, 7.0]).unwrap();
        assert!(s.phases().windows(2).all(|w| w[0] <= w[1]));
        let total: f64 = s.gaps().iter().sum();
        assert!((total - TAU).abs() < 1e-12);
    }
}
