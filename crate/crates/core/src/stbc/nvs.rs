//! Bounded search for the minimum singular value of the infinite code.
//!
//! The infimum over all nonzero integer combinations cannot be computed by a
//! finite search; the box search below returns an upper bound on it, which
//! is exact for designs whose minimiser has small coefficients.

use crate::error::Result;
use crate::numerics::singular_values;

use super::LinearDesign;

/// Coefficient box half-width used when the caller has no preference.
pub const DEFAULT_NVS_BOUND: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NvsMode {
    /// Smallest singular value `σ_nt(X)`.
    Full,
    /// Smallest singular value that is not zero; suited to `T < nt`
    /// designs whose codewords are rank one.
    Nonzero,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NvsEstimate {
    pub mode: NvsMode,
    pub coeff_bound: u32,
    pub sigma_min: f64,
    /// A coefficient vector attaining `sigma_min`, first nonzero entry
    /// positive. Empty when every searched codeword vanished.
    pub minimizer: Vec<i64>,
    /// Number of (sign-canonical) coefficient vectors examined.
    pub searched: u64,
}

/// Minimum over nonzero `s ∈ [−b, b]^{2K}` of the chosen singular value of
/// `X(s)`. A codeword that vanishes identically has `σ = 0` in full mode
/// (two distinct symbol vectors collide) and is skipped in nonzero mode.
pub fn nvs_sigma_min(design: &LinearDesign, coeff_bound: u32, mode: NvsMode) -> Result<NvsEstimate> {
    let n = design.real_dim();
    let b = coeff_bound.max(1) as i64;
    let weight_energy: f64 = design.weights().iter().map(|w| w.frobenius_norm_sqr()).sum();
    let zero_floor = 1e-20 * weight_energy.max(f64::MIN_POSITIVE);

    let mut best = NvsEstimate { mode, coeff_bound, sigma_min: f64::INFINITY, minimizer: Vec::new(), searched: 0 };
    let mut d = vec![-b; n];
    let mut coeffs = vec![0.0; n];
    loop {
        // ±d give the same singular values; visit one representative.
        if d.iter().find(|&&v| v != 0).is_some_and(|&v| v > 0) {
            best.searched += 1;
            for (c, &v) in coeffs.iter_mut().zip(&d) {
                *c = v as f64;
            }
            let x = design.combine(&coeffs);
            let vanished = x.frobenius_norm_sqr() <= zero_floor;
            if !(vanished && mode == NvsMode::Nonzero) {
                let sv = if vanished { vec![0.0] } else { singular_values(&x)? };
                let value = match mode {
                    NvsMode::Full => *sv.last().unwrap(),
                    NvsMode::Nonzero => {
                        let floor = 1e-9 * sv[0];
                        sv.iter().rev().copied().find(|&v| v > floor).unwrap_or(0.0)
                    }
                };
                if value < best.sigma_min {
                    best.sigma_min = value;
                    best.minimizer = d.clone();
                }
            }
        }
        // odometer over the box
        let mut i = n;
        loop {
            if i == 0 {
                if best.minimizer.is_empty() {
                    best.sigma_min = 0.0;
                }
                return Ok(best);
            }
            i -= 1;
            if d[i] < b {
                d[i] += 1;
                break;
            }
            d[i] = -b;
        }
    }
}
