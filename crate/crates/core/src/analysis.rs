//! Error-probability bounds for integer-forcing decoding and diversity-order
//! estimation from simulated BER curves.
//!
//! Per layer, Step 1 fails when the filtered Gaussian noise exceeds 1/2, so
//! a Chernoff argument gives `exp(−P / (4·nt·‖b_m‖²))`. With
//! `‖b_m‖² ≤ ε²_{2K}(Λ*) ≤ (2K³ + 3K²) / ε₁²(Λ)` this becomes
//! `exp(−c·P·ε₁²(Λ))`, `c = 1 / (4·nt·(2K³ + 3K²))`. For a design whose
//! nonzero codewords have singular values at least `σ_min`, averaging over
//! Rayleigh fading yields `(1 + c·P·σ²_min)^{−nt·nr}` per layer.

use crate::error::{Error, Result};
use crate::numerics::{greedy_independent, spd_inverse, GramLattice, LatticeEnumerator, RealMatrix, ShortVector};

/// Dual vectors enumerated when estimating successive minima.
pub const DUAL_CANDIDATES: usize = 500;

/// `exp(−P / (4·nt·‖b‖²))`
pub fn chernoff_layer_bound(snr: f64, nt: usize, b_row_norm2: f64) -> f64 {
    if b_row_norm2 <= 0.0 {
        return 0.0;
    }
    (-snr / (4.0 * nt as f64 * b_row_norm2)).exp()
}

/// `2K³ + 3K²`
fn cubic(k: usize) -> f64 {
    let k = k as f64;
    2.0 * k * k * k + 3.0 * k * k
}

/// `c = 1 / (4·nt·(2K³ + 3K²))`
pub fn lemma1_constant(k: usize, nt: usize) -> f64 {
    1.0 / (4.0 * nt as f64 * cubic(k))
}

/// `exp(−c·P·ε₁²)`
pub fn lemma1_bound(snr: f64, k: usize, nt: usize, eps1_sq: f64) -> f64 {
    (-lemma1_constant(k, nt) * snr * eps1_sq).exp()
}

/// Transference factor `2K³ + 3K²` bounding `ε²_{2K}(Λ*)·ε₁²(Λ)`.
pub fn transference_factor(k: usize) -> f64 {
    cubic(k)
}

/// Gram matrix `𝓗ᵀ𝓗` of the lattice generated by the columns of `𝓗`.
pub fn primal_gram(heff: &RealMatrix) -> Result<GramLattice> {
    GramLattice::new(heff.gram_cols())
}

/// Gram matrix `(𝓗ᵀ𝓗)⁻¹` of the dual lattice generated by the rows of the
/// pseudo-inverse of `𝓗`.
pub fn dual_gram(heff: &RealMatrix) -> Result<GramLattice> {
    let inv = spd_inverse(&heff.gram_cols())?;
    let n = inv.rows();
    let mut sym = inv.clone();
    for i in 0..n {
        for j in 0..n {
            sym[(i, j)] = 0.5 * (inv[(i, j)] + inv[(j, i)]);
        }
    }
    GramLattice::new(sym)
}

/// `ε₁²(Λ)`: squared length of the shortest nonzero `𝓗·d`.
pub fn lattice_min_dist_sq(heff: &RealMatrix) -> Result<f64> {
    let lat = primal_gram(heff)?;
    Ok(LatticeEnumerator::new(&lat)?.minimum()?.norm2)
}

/// Vectors realising the successive minima `ε_1 ≤ … ≤ ε_n` of `lat`.
///
/// Every successive minimum is at most the longest LLL-reduced basis
/// vector, so enumerating that ball and greedily keeping independent
/// vectors is exact.
pub fn successive_minima(lat: &GramLattice) -> Result<Vec<ShortVector>> {
    let n = lat.dim();
    let enumerator = LatticeEnumerator::new(lat)?;
    let radius = enumerator.reduced_norms().iter().copied().fold(0.0, f64::max);
    let pool = enumerator.enumerate(radius, DUAL_CANDIDATES)?;
    if let Some(v) = greedy_independent(&pool, n) {
        return Ok(v);
    }
    let pool = enumerator.enumerate(radius, usize::MAX)?;
    greedy_independent(&pool, n).ok_or(Error::RankDeficient)
}

/// `ε²_{2K}(Λ*)`, the last squared successive minimum of the dual lattice.
pub fn dual_last_minimum_sq(heff: &RealMatrix) -> Result<f64> {
    let minima = successive_minima(&dual_gram(heff)?)?;
    Ok(minima.last().map_or(0.0, |v| v.norm2))
}

/// Union over `2K` layers of the fading-averaged per-layer bound,
/// `2K·(1 + c·P·σ²_min)^{−nt·nr}`. Not clipped.
pub fn theorem1_avg_bound(snr: f64, k: usize, nt: usize, nr: usize, sigma_min_sq: f64) -> Result<f64> {
    if !(sigma_min_sq > 0.0) {
        return Err(Error::NvsViolated);
    }
    let c = lemma1_constant(k, nt);
    Ok(2.0 * k as f64 * (1.0 + c * snr * sigma_min_sq).powi(-((nt * nr) as i32)))
}

/// `c′ = 2K / (c·σ²_min)^{nt·nr}` of the high-SNR form `c′ / P^{nt·nr}`.
pub fn theorem1_high_snr_constant(k: usize, nt: usize, nr: usize, sigma_min_sq: f64) -> Result<f64> {
    if !(sigma_min_sq > 0.0) {
        return Err(Error::NvsViolated);
    }
    Ok(2.0 * k as f64 / (lemma1_constant(k, nt) * sigma_min_sq).powi((nt * nr) as i32))
}

/// `c = 1 / (4·nt·(2nt³ + 3nt²))` for uncoded layered transmission.
pub fn vblast_constant(nt: usize) -> f64 {
    lemma1_constant(nt, nt)
}

/// `(1 + c·P)^{−nr}`
pub fn vblast_bound(snr: f64, nt: usize, nr: usize) -> f64 {
    (1.0 + vblast_constant(nt) * snr).powi(-(nr as i32))
}

/// Negated least-squares slope of `log10(BER)` against `log10(P)`.
pub fn diversity_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::Config("a slope needs at least two points".into()));
    }
    if points.iter().any(|&(_, ber)| !(ber > 0.0)) {
        return Err(Error::InsufficientErrors);
    }
    let xs: Vec<f64> = points.iter().map(|&(db, _)| db / 10.0).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, ber)| ber.log10()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Config("slope needs at least two distinct SNR values".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Ok(-sxy / sxx)
}

/// An analytic curve over an SNR grid. Values are clipped to `(0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundCurve {
    pub label: String,
    pub snr_db: Vec<f64>,
    pub values: Vec<f64>,
}

impl BoundCurve {
    pub fn from_fn(label: impl Into<String>, snr_db: &[f64], mut f: impl FnMut(f64) -> Result<f64>) -> Result<Self> {
        let values = snr_db
            .iter()
            .map(|&db| f(db).map(|v| v.clamp(f64::MIN_POSITIVE, 1.0)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { label: label.into(), snr_db: snr_db.to_vec(), values })
    }
}
