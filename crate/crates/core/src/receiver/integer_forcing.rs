//! Integer-forcing equation selection, filtering and decoding.
//!
//! For layer `m` the receiver sees `ỹ_m = b_m·y`, i.e. the integer
//! combination `a_m·s` plus effective noise of power
//!
//! ```text
//! g(a, b) = Ē·‖b·𝓗 − a‖² + (nt / 2P)·‖b‖²
//! ```
//!
//! For fixed `a` this is minimised by `b = a·F` with
//! `F = (α·I + 𝓗ᵀ𝓗)⁻¹·𝓗ᵀ`, `α = nt / (2P·Ē)`, and the minimum is the
//! quadratic form `a·G·aᵀ` of [`if_gram`]. Choosing `A` is therefore a
//! short-vector problem in the lattice with Gram matrix `G`, subject to `A`
//! being invertible modulo `√M`.

use crate::error::{Error, Result};
use crate::numerics::{dot, spd_solve, GramLattice, IntMatrix, LatticeEnumerator, RealMatrix, ShortVector};
use crate::stbc::Constellation;

use super::modular::{invert_mod_2k, mul_mod};
use super::DecodeResult;

/// Candidate vectors considered by [`if_select_a`].
pub const MAX_CANDIDATES: usize = 200;

/// Regularisation `α = nt / (2P·Ē)` of the optimal filter; zero at infinite
/// SNR, where the filter becomes the pseudo-inverse.
pub fn filter_regularization(constellation: &Constellation, snr: f64, nt: usize) -> f64 {
    if snr.is_infinite() {
        0.0
    } else {
        nt as f64 / (2.0 * snr * constellation.ebar())
    }
}

/// `F = (α·I + 𝓗ᵀ𝓗)⁻¹·𝓗ᵀ`, the optimal filter for `A = I`. Row `m` of
/// `A·F` is the optimal `b_m` for `a_m`.
pub fn optimal_filter(heff: &RealMatrix, constellation: &Constellation, snr: f64, nt: usize) -> Result<RealMatrix> {
    let alpha = filter_regularization(constellation, snr, nt);
    let mut normal = heff.gram_cols();
    for i in 0..normal.rows() {
        normal[(i, i)] += alpha;
    }
    spd_solve(&normal, &heff.transpose())
}

/// Effective noise power `g(a, b)` evaluated from its definition.
pub fn layer_noise_power(
    heff: &RealMatrix,
    a: &[i64],
    b: &[f64],
    constellation: &Constellation,
    snr: f64,
    nt: usize,
) -> f64 {
    let mut quant = 0.0;
    for j in 0..heff.cols() {
        let bh: f64 = (0..heff.rows()).map(|i| b[i] * heff[(i, j)]).sum();
        let e = bh - a[j] as f64;
        quant += e * e;
    }
    let noise = if snr.is_infinite() { 0.0 } else { nt as f64 / (2.0 * snr) * dot(b, b) };
    constellation.ebar() * quant + noise
}

/// Gram matrix `G = Ē·(F𝓗 − I)(F𝓗 − I)ᵀ + (nt/2P)·F·Fᵀ` so that
/// `g(a, a·F) = a·G·aᵀ`.
pub fn if_gram(heff: &RealMatrix, constellation: &Constellation, snr: f64, nt: usize) -> Result<GramLattice> {
    gram_from_filter(heff, &optimal_filter(heff, constellation, snr, nt)?, constellation, snr, nt)
}

fn gram_from_filter(
    heff: &RealMatrix,
    f: &RealMatrix,
    constellation: &Constellation,
    snr: f64,
    nt: usize,
) -> Result<GramLattice> {
    let n = heff.cols();
    let residual = f.matmul(heff)?.sub(&RealMatrix::identity(n))?;
    let mut g = residual.gram_rows().scale(constellation.ebar());
    if !snr.is_infinite() {
        g = g.add(&f.gram_rows().scale(nt as f64 / (2.0 * snr)))?;
    }
    for i in 0..n {
        for j in 0..i {
            let v = 0.5 * (g[(i, j)] + g[(j, i)]);
            g[(i, j)] = v;
            g[(j, i)] = v;
        }
    }
    GramLattice::new(g)
}

// Incremental basis of a subspace of GF(2)^n, n <= 64.
struct Gf2Basis {
    pivots: Vec<u64>,
}

impl Gf2Basis {
    fn new() -> Self {
        Self { pivots: Vec::new() }
    }

    fn insert(&mut self, v: &[i64]) -> bool {
        let mut x = v.iter().enumerate().fold(0u64, |m, (i, &c)| m | (((c & 1) as u64) << i));
        for &p in &self.pivots {
            x = x.min(x ^ p);
        }
        if x == 0 {
            return false;
        }
        self.pivots.push(x);
        self.pivots.sort_unstable_by(|a, b| b.cmp(a));
        true
    }
}

/// Picks the rows of `A` from the shortest vectors of `g`.
///
/// Candidates are enumerated in ascending `a·G·aᵀ` and accepted greedily
/// when they are independent modulo 2 of the rows already chosen. Odd
/// determinant is exactly independence over GF(2), which implies real
/// independence, and because GF(2)-independence is a matroid the greedy
/// choice minimises the largest `a_m·G·a_mᵀ` over all matrices invertible
/// modulo `√M`. The search radius is the longest LLL-reduced basis vector:
/// that basis is unimodular, so the greedy pass always completes inside it.
pub fn if_select_a(g: &GramLattice, sqrt_m: u32) -> Result<IntMatrix> {
    Constellation::new(sqrt_m)?;
    let enumerator = LatticeEnumerator::new(g)?;
    select_from(&enumerator)
}

fn select_from(enumerator: &LatticeEnumerator) -> Result<IntMatrix> {
    let n = enumerator.lattice().dim();
    if n > 64 {
        return Err(Error::DimensionMismatch(format!("{n} layers exceed the 64 supported")));
    }
    let radius = enumerator.reduced_norms().iter().copied().fold(0.0, f64::max);
    let candidates = enumerator.enumerate(radius, MAX_CANDIDATES)?;
    let rows = greedy_odd_determinant(&candidates, n).ok_or(Error::SelectionFailure)?;
    let data = rows.into_iter().flat_map(|v| v.coeffs).collect();
    IntMatrix::from_vec(n, n, data)
}

/// Greedy GF(2)-independent selection of `count` rows from sorted
/// candidates.
pub fn greedy_odd_determinant(candidates: &[ShortVector], count: usize) -> Option<Vec<ShortVector>> {
    let mut basis = Gf2Basis::new();
    let mut picked = Vec::with_capacity(count);
    for cand in candidates {
        if picked.len() == count {
            break;
        }
        if basis.insert(&cand.coeffs) {
            picked.push(cand.clone());
        }
    }
    (picked.len() == count).then_some(picked)
}

/// `B = A·F`: row `m` is the optimal filter for the integer row `a_m`.
pub fn if_compute_b(
    heff: &RealMatrix,
    a: &IntMatrix,
    constellation: &Constellation,
    snr: f64,
    nt: usize,
) -> Result<RealMatrix> {
    let f = optimal_filter(heff, constellation, snr, nt)?;
    a.to_real().matmul(&f)
}

/// Integer-forcing equations for one channel realisation.
#[derive(Debug, Clone)]
pub struct IfEquations {
    pub a: IntMatrix,
    pub a_inv: IntMatrix,
    pub b: RealMatrix,
    pub noise_powers: Vec<f64>,
    /// `A·offset·𝟙`, added to `B·y` to undo the constellation shift.
    shift: Vec<f64>,
    sqrt_m: u32,
}

impl IfEquations {
    /// Full receiver design: Gram matrix, `A` selection and filters. Falls
    /// back to `A = I` if no odd-determinant set is found among the
    /// candidates.
    pub fn design(heff: &RealMatrix, constellation: &Constellation, snr: f64, nt: usize) -> Result<Self> {
        let f = optimal_filter(heff, constellation, snr, nt)?;
        let g = gram_from_filter(heff, &f, constellation, snr, nt)?;
        let a = match if_select_a(&g, constellation.sqrt_m()) {
            Ok(a) => a,
            Err(Error::SelectionFailure) => IntMatrix::identity(heff.cols()),
            Err(e) => return Err(e),
        };
        Self::from_filter(heff, a, &f, constellation, snr, nt)
    }

    /// Equations for a caller-chosen `A`, which must have odd determinant.
    pub fn with_matrix(
        heff: &RealMatrix,
        a: IntMatrix,
        constellation: &Constellation,
        snr: f64,
        nt: usize,
    ) -> Result<Self> {
        let f = optimal_filter(heff, constellation, snr, nt)?;
        Self::from_filter(heff, a, &f, constellation, snr, nt)
    }

    fn from_filter(
        heff: &RealMatrix,
        a: IntMatrix,
        f: &RealMatrix,
        constellation: &Constellation,
        snr: f64,
        nt: usize,
    ) -> Result<Self> {
        let sqrt_m = constellation.sqrt_m();
        let a_inv = invert_mod_2k(&a, sqrt_m)?;
        let b = a.to_real().matmul(f)?;
        let noise_powers = (0..a.rows())
            .map(|m| layer_noise_power(heff, a.row(m), b.row(m), constellation, snr, nt))
            .collect();
        let offset = constellation.offset();
        let shift = (0..a.rows()).map(|m| offset * a.row(m).iter().sum::<i64>() as f64).collect();
        Ok(Self { a, a_inv, b, noise_powers, shift, sqrt_m })
    }

    /// `ỹ = B·y + A·offset·𝟙`, whose noiseless value is the integer vector
    /// `A·s`.
    pub fn filter(&self, y: &[f64]) -> Result<Vec<f64>> {
        let mut out = self.b.mul_vec(y)?;
        for (o, s) in out.iter_mut().zip(&self.shift) {
            *o += s;
        }
        Ok(out)
    }

    pub fn sqrt_m(&self) -> u32 {
        self.sqrt_m
    }
}

/// Step 1 rounds every filtered layer to the nearest integer, step 2 reduces
/// modulo `√M` and step 3 solves `A·ŝ ≡ r (mod √M)`.
pub fn if_decode(y: &[f64], eq: &IfEquations, constellation: &Constellation) -> Result<DecodeResult> {
    let filtered = eq.filter(y)?;
    let layer_integers: Vec<i64> = filtered.iter().map(|v| v.round() as i64).collect();
    let r: Vec<i64> = layer_integers.iter().map(|&v| constellation.reduce(v) as i64).collect();
    let s_hat = mul_mod(&eq.a_inv, &r, constellation.sqrt_m());
    Ok(DecodeResult { s_hat, layer_integers, ok: true })
}

/// Steps 2 and 3 alone: ring symbols from the rounded layer integers.
pub fn solve_layers(eq: &IfEquations, layer_integers: &[i64]) -> Vec<u32> {
    let m = eq.sqrt_m as i64;
    let r: Vec<i64> = layer_integers.iter().map(|v| v.rem_euclid(m)).collect();
    mul_mod(&eq.a_inv, &r, eq.sqrt_m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: u32) -> Constellation {
        Constellation::new(n).unwrap()
    }

    #[test]
    fn perfect_channel_infinite_snr_has_zero_gram() {
        let g = if_gram(&RealMatrix::identity(2), &q(2), f64::INFINITY, 2).unwrap();
        assert!(g.gram().frobenius_norm() < 1e-15);
    }

    #[test]
    fn identity_channel_filter_is_scalar() {
        // 𝓗 = I: F = I / (1 + α)
        let c = q(2);
        let snr = 2.0;
        let b = if_compute_b(&RealMatrix::identity(2), &IntMatrix::identity(2), &c, snr, 2).unwrap();
        let alpha = 2.0 / (2.0 * snr * c.ebar());
        let expected = RealMatrix::identity(2).scale(1.0 / (1.0 + alpha));
        assert!(b.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn select_identity_for_identity_gram() {
        let g = GramLattice::new(RealMatrix::identity(4)).unwrap();
        assert_eq!(if_select_a(&g, 2).unwrap(), IntMatrix::identity(4));
    }

    #[test]
    fn select_skips_even_multiples() {
        let g = GramLattice::new(RealMatrix::diagonal(&[1.0, 100.0])).unwrap();
        assert_eq!(if_select_a(&g, 4).unwrap(), IntMatrix::identity(2));
    }

    #[test]
    fn round_trip_small_example() {
        // A = [[1,1],[0,1]], r = (3,2) mod 4 gives s = (1,2).
        let eq = IfEquations {
            a: IntMatrix::from_rows(&[[1, 1], [0, 1]]),
            a_inv: invert_mod_2k(&IntMatrix::from_rows(&[[1, 1], [0, 1]]), 4).unwrap(),
            b: RealMatrix::identity(2),
            noise_powers: vec![0.0; 2],
            shift: vec![0.0; 2],
            sqrt_m: 4,
        };
        assert_eq!(solve_layers(&eq, &[3, 2]), vec![1, 2]);
        assert_eq!(solve_layers(&eq, &[-1, 6]), vec![1, 2]);
    }

    #[test]
    fn rounding_and_modulo() {
        let eq = IfEquations::with_matrix(&RealMatrix::identity(2), IntMatrix::identity(2), &q(4), f64::INFINITY, 1)
            .unwrap();
        // ỹ = y + 1.5; choose y so that ỹ = (2.6, -0.4)
        let out = if_decode(&[1.1, -1.9], &eq, &q(4)).unwrap();
        assert_eq!(out.layer_integers, vec![3, 0]);
        assert_eq!(out.s_hat, vec![3, 0]);
    }
}
