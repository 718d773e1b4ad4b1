//! Haar-distributed unitary matrices (CUE) and their eigenphase spectra.
//!
//! A sample is a deterministic function of `(n, seed)`. Ensembles derive one
//! seed per member from a master seed, so members can be generated in any
//! order, or in parallel, and still reproduce bit for bit.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{eigenphases, householder_qr, ComplexDenseMatrix, EigenPhaseSpectrum};

/// Matrix size, ensemble size and master seed of a Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnsembleConfig {
    pub n: usize,
    pub num_samples: usize,
    pub master_seed: u64,
}

impl EnsembleConfig {
    pub fn new(n: usize, num_samples: usize, master_seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "matrix dimension must be >= 1".into(),
            ));
        }
        if num_samples == 0 {
            return Err(Error::InvalidParameter(
                "ensemble needs at least one sample".into(),
            ));
        }
        Ok(Self {
            n,
            num_samples,
            master_seed,
        })
    }

    /// Seed of ensemble member `index`.
    pub fn sample_seed(&self, index: usize) -> u64 {
        derive_seed(self.master_seed, index as u64)
    }

    /// Eigenphase spectra of every member, in index order. Runs on the
    /// current rayon pool; `progress` receives the number of finished
    /// members (in completion order).
    pub fn spectra(
        &self,
        progress: Option<&(dyn Fn(usize) + Sync)>,
    ) -> Result<Vec<EigenPhaseSpectrum>> {
        let done = std::sync::atomic::AtomicUsize::new(0);
        (0..self.num_samples)
            .into_par_iter()
            .map(|i| {
                let s = sample_eigenphases(self.n, self.sample_seed(i));
                if let Some(cb) = progress {
                    cb(done.fetch_add(1, std::sync::atomic::Ordering::Relaxed) + 1);
                }
                s
            })
            .collect()
    }
}

/// Mixes a master seed and a stream index into an independent 64-bit seed
/// (SplitMix64 finalizer applied twice).
pub fn derive_seed(master: u64, index: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    mix(mix(master.wrapping_add(0x9e37_79b9_7f4a_7c15)) ^ index.wrapping_mul(0xd1b5_4a32_d192_ed03))
}

/// `n x n` matrix of independent complex Gaussians, real and imaginary parts
/// each `N(0, 1/2)`.
///
/// # Panics
/// If `n == 0`.
pub fn sample_ginibre(n: usize, seed: u64) -> ComplexDenseMatrix {
    assert!(n >= 1, "matrix dimension must be >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..n * n)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re * FRAC_1_SQRT_2, im * FRAC_1_SQRT_2)
        })
        .collect();
    ComplexDenseMatrix::new(n, n, data).expect("gaussian entries are finite")
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of
/// `diag(R)` moved into `Q`, so that the factorization is the one with a
/// positive diagonal.
///
/// # Panics
/// If `n == 0`.
pub fn sample_haar_unitary(n: usize, seed: u64) -> ComplexDenseMatrix {
    let mut attempt_seed = seed;
    loop {
        let g = sample_ginibre(n, attempt_seed);
        let (mut q, r) = householder_qr(&g).expect("square input");
        let diag: Vec<Complex64> = (0..n).map(|j| r[(j, j)]).collect();
        if diag.iter().any(|d| d.norm() == 0.0) {
            // Measure-zero event; move on to the next derived seed.
            attempt_seed = derive_seed(attempt_seed, 1);
            continue;
        }
        let phases: Vec<Complex64> = diag.iter().map(|d| d / d.norm()).collect();
        for i in 0..n {
            for (j, ph) in phases.iter().enumerate() {
                q[(i, j)] *= ph;
            }
        }
        return q;
    }
}

/// Sorted eigenphases of [`sample_haar_unitary`]`(n, seed)`.
pub fn sample_eigenphases(n: usize, seed: u64) -> Result<EigenPhaseSpectrum> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "matrix dimension must be >= 1".into(),
        ));
    }
    eigenphases(&sample_haar_unitary(n, seed))
}

/// `Tr U^k` computed from the eigenphases.
pub fn power_trace(spectrum: &EigenPhaseSpectrum, k: u32) -> Complex64 {
    spectrum
        .phases()
        .iter()
        .map(|&t| Complex64::from_polar(1.0, k as f64 * t))
        .sum()
}
