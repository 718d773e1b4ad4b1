//! Critical points of characteristic polynomials of Haar-random unitary
//! matrices.
//!
//! - [`haar`] samples CUE matrices and their eigenphases.
//! - [`critical`] finds the `n - 1` roots of the derivative of the
//!   characteristic polynomial.
//! - [`stats`] aggregates them into the radial distribution `Ip(x)`.
//! - [`spacing`] computes the exact small-x series of `Ip(x)` from the
//!   sine-kernel gap probability.
//! - [`szego`] covers the Toeplitz determinant side: Szegő limits and
//!   Heine–Szegő / Diaconis–Shahshahani Monte Carlo checks.

pub mod critical;
pub mod error;
pub mod haar;
pub mod linalg;
pub mod matching;
pub mod spacing;
pub mod stats;
pub mod szego;

pub use critical::CriticalPointSet;
pub use error::{Error, Result};
pub use haar::EnsembleConfig;
pub use linalg::{ComplexDenseMatrix, EigenPhaseSpectrum};
pub use num_complex::Complex64;
pub use spacing::{GapProbabilitySeries, PiPolynomial};
pub use stats::{IpxCurve, ScaledRadialSample, SpacingCorrelationSample};
pub use szego::{Symbol, SzegoParameters, ToeplitzSymbol};
