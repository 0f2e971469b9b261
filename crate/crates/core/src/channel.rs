//! Quasi-static Rayleigh fading and the real vectorised signal model
//! `y = 𝓗·(s − offset·𝟙) + √(nt/P)·z`.
//!
//! Complex noise `N_c(0, 1)` becomes two real components of variance 1/2,
//! so every real entry of `z` has variance 1/2.

use crate::error::{Error, Result};
use crate::numerics::{
    kron_identity_matmul, real_expand, real_singular_values, ComplexMatrix, GaussianSampler, RealMatrix,
};
use crate::stbc::{build_code_matrix, normalization_factor, unvectorize, Constellation, LinearDesign};

/// Consecutive rank-deficient draws tolerated before giving up.
pub const MAX_RESAMPLES: usize = 10;

/// Relative floor on the smallest singular value of `𝓗`.
pub const RANK_TOL: f64 = 1e-10;

/// Converts an SNR in dB to the linear `P`.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// One fading block: `H`, its real expansion `H′` and the effective real
/// channel `𝓗 = (H′ ⊗ I_T)·γR`.
#[derive(Debug, Clone)]
pub struct ChannelRealization {
    pub h: ComplexMatrix,
    pub hprime: RealMatrix,
    pub heff: RealMatrix,
    t: usize,
}

impl ChannelRealization {
    pub fn nr(&self) -> usize {
        self.h.rows()
    }

    pub fn nt(&self) -> usize {
        self.h.cols()
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Ratio of the smallest to the largest singular value of `𝓗`.
    pub fn conditioning(&self) -> Result<f64> {
        let sv = real_singular_values(&self.heff)?;
        let max = sv[0];
        Ok(if max > 0.0 { *sv.last().unwrap() / max } else { 0.0 })
    }
}

/// Observation after the `√(nt/P)` scaling.
#[derive(Debug, Clone)]
pub struct ReceivedVector {
    pub y: Vec<f64>,
    /// Linear SNR `P`; infinite for a noiseless observation.
    pub snr: f64,
    /// `√(nt/P)`
    pub noise_scale: f64,
}

impl ReceivedVector {
    /// The complex received matrix `Y = √(P/nt)·H·X + Z` this observation
    /// was scaled from. Requires a finite SNR.
    pub fn to_complex(&self, nr: usize, nt: usize, t: usize) -> ComplexMatrix {
        let scale = (self.snr / nt as f64).sqrt();
        let y: Vec<f64> = self.y.iter().map(|v| v * scale).collect();
        unvectorize(&y, nr, t)
    }
}

/// Everything fixed across channel uses: the design, the constellation, the
/// receive antenna count and the normalised code matrix `γR`.
#[derive(Debug, Clone)]
pub struct LinkModel {
    design: LinearDesign,
    constellation: Constellation,
    nr: usize,
    gamma: f64,
    code: RealMatrix,
}

impl LinkModel {
    pub fn new(design: LinearDesign, constellation: Constellation, nr: usize) -> Result<Self> {
        if nr == 0 {
            return Err(Error::Config("at least one receive antenna is required".into()));
        }
        let gamma = normalization_factor(&design, &constellation)?;
        let code = build_code_matrix(&design).scale(gamma);
        Ok(Self { design, constellation, nr, gamma, code })
    }

    pub fn design(&self) -> &LinearDesign {
        &self.design
    }

    pub fn constellation(&self) -> &Constellation {
        &self.constellation
    }

    pub fn nr(&self) -> usize {
        self.nr
    }

    pub fn nt(&self) -> usize {
        self.design.nt()
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `γR`
    pub fn code_matrix(&self) -> &RealMatrix {
        &self.code
    }

    /// Bits carried by one codeword.
    pub fn bits_per_codeword(&self) -> usize {
        self.design.real_dim() * self.constellation.bits_per_symbol() as usize
    }

    /// Builds the realisation for a given `H` without any rank check.
    pub fn realize(&self, h: ComplexMatrix) -> Result<ChannelRealization> {
        if h.rows() != self.nr || h.cols() != self.nt() {
            return Err(Error::DimensionMismatch(format!(
                "channel is {}x{}, link is {}x{}",
                h.rows(),
                h.cols(),
                self.nr,
                self.nt()
            )));
        }
        let hprime = real_expand(&h);
        let heff = kron_identity_matmul(&hprime, self.design.t(), &self.code)?;
        Ok(ChannelRealization { h, hprime, heff, t: self.design.t() })
    }

    /// Draws `H` with i.i.d. `N_c(0, 1)` entries, redrawing while `𝓗` is
    /// numerically rank deficient.
    pub fn sample_channel(&self, sampler: &mut GaussianSampler) -> Result<ChannelRealization> {
        for _ in 0..=MAX_RESAMPLES {
            let h = sampler.complex_matrix(self.nr, self.nt(), 0.5);
            let ch = self.realize(h)?;
            if ch.heff.rows() >= ch.heff.cols() && ch.conditioning()? > RANK_TOL {
                return Ok(ch);
            }
        }
        Err(Error::RankFailure { attempts: MAX_RESAMPLES + 1 })
    }

    /// Uniform ring symbols for one codeword.
    pub fn random_symbols(&self, sampler: &mut GaussianSampler) -> Vec<u32> {
        let q = self.constellation.sqrt_m();
        (0..self.design.real_dim()).map(|_| sampler.uniform_below(q)).collect()
    }

    /// `y = 𝓗·(s − offset·𝟙) + √(nt/P)·z`. An infinite `snr` gives the
    /// noiseless observation (noise is still drawn, keeping random streams
    /// aligned across SNR values).
    pub fn transmit(
        &self,
        ch: &ChannelRealization,
        s: &[u32],
        snr: f64,
        sampler: &mut GaussianSampler,
    ) -> Result<ReceivedVector> {
        transmit(ch, s, &self.constellation, snr, sampler)
    }
}

/// Free-standing form of [`LinkModel::sample_channel`] with its own seed.
pub fn sample_channel(link: &LinkModel, seed: u64) -> Result<ChannelRealization> {
    link.sample_channel(&mut GaussianSampler::new(seed))
}

/// `y = 𝓗·(s − offset·𝟙) + √(nt/P)·z` with real `z` of variance 1/2.
pub fn transmit(
    ch: &ChannelRealization,
    s: &[u32],
    constellation: &Constellation,
    snr: f64,
    sampler: &mut GaussianSampler,
) -> Result<ReceivedVector> {
    if !(snr > 0.0) {
        return Err(Error::Config(format!("SNR must be positive, got {snr}")));
    }
    if s.len() != ch.heff.cols() {
        return Err(Error::DimensionMismatch(format!("{} symbols for {} columns", s.len(), ch.heff.cols())));
    }
    constellation.check_symbols(s)?;
    let shifted: Vec<f64> = s.iter().map(|&v| constellation.shifted(v)).collect();
    let mut y = ch.heff.mul_vec(&shifted)?;
    let noise_scale = if snr.is_infinite() { 0.0 } else { (ch.nt() as f64 / snr).sqrt() };
    let sd = std::f64::consts::FRAC_1_SQRT_2;
    for v in y.iter_mut() {
        *v += noise_scale * sd * sampler.normal();
    }
    Ok(ReceivedVector { y, snr, noise_scale })
}
