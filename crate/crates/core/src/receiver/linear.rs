//! Zero-forcing and MMSE receivers: `A = I`, then slice each layer onto the
//! ring by rounding and clamping.

use crate::error::Result;
use crate::numerics::{spd_solve, RealMatrix};
use crate::stbc::Constellation;

use super::integer_forcing::optimal_filter;
use super::DecodeResult;

/// Moore–Penrose pseudo-inverse `(𝓗ᵀ𝓗)⁻¹𝓗ᵀ` of a full-column-rank matrix.
pub fn pseudo_inverse(heff: &RealMatrix) -> Result<RealMatrix> {
    spd_solve(&heff.gram_cols(), &heff.transpose())
}

/// Rounds `B·y + offset` and clamps onto `{0, …, √M − 1}`. `ok` is false
/// when any layer had to be clamped.
pub fn slice(b: &RealMatrix, y: &[f64], constellation: &Constellation) -> Result<DecodeResult> {
    let offset = constellation.offset();
    let layer_integers: Vec<i64> = b.mul_vec(y)?.into_iter().map(|v| (v + offset).round() as i64).collect();
    let s_hat: Vec<u32> = layer_integers.iter().map(|&v| constellation.clamp(v)).collect();
    let ok = layer_integers.iter().zip(&s_hat).all(|(&v, &s)| v == s as i64);
    Ok(DecodeResult { s_hat, layer_integers, ok })
}

pub fn zf_decode(y: &[f64], heff: &RealMatrix, constellation: &Constellation) -> Result<DecodeResult> {
    slice(&pseudo_inverse(heff)?, y, constellation)
}

pub fn mmse_decode(
    y: &[f64],
    heff: &RealMatrix,
    constellation: &Constellation,
    snr: f64,
    nt: usize,
) -> Result<DecodeResult> {
    slice(&optimal_filter(heff, constellation, snr, nt)?, y, constellation)
}
