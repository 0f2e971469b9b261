use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::matrix::ComplexMatrix;

/// Seeded source of Gaussian and uniform draws. One per worker.
#[derive(Debug, Clone)]
pub struct GaussianSampler {
    rng: ChaCha8Rng,
}

impl GaussianSampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Standard normal real sample.
    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Circularly-symmetric complex sample with the given variance on each
    /// of the real and imaginary parts.
    pub fn complex(&mut self, variance_per_real_dim: f64) -> Complex64 {
        let s = variance_per_real_dim.sqrt();
        let re = self.normal() * s;
        let im = self.normal() * s;
        Complex64::new(re, im)
    }

    pub fn complex_matrix(&mut self, rows: usize, cols: usize, variance_per_real_dim: f64) -> ComplexMatrix {
        let data = (0..rows * cols).map(|_| self.complex(variance_per_real_dim)).collect();
        ComplexMatrix::from_vec(rows, cols, data).expect("shape is consistent")
    }

    /// Uniform integer in `0..n`.
    pub fn uniform_below(&mut self, n: u32) -> u32 {
        self.rng.random_range(0..n)
    }

    pub fn rng_mut(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

/// i.i.d. circularly-symmetric complex Gaussian matrix, deterministic in
/// `seed`. `variance_per_real_dim = 0.5` gives unit-variance `N_c(0, 1)`
/// entries.
pub fn sample_gaussian_matrix(rows: usize, cols: usize, seed: u64, variance_per_real_dim: f64) -> ComplexMatrix {
    GaussianSampler::new(seed).complex_matrix(rows, cols, variance_per_real_dim)
}
