use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;

use crate::channel::{db_to_linear, LinkModel};
use crate::error::{Error, Result};
use crate::numerics::GaussianSampler;
use crate::receiver::{if_decode, mmse_decode, zf_decode, IfEquations, MlDecoder, ReceiverKind};

use super::SimConfig;

/// Largest number of trials scheduled between two stopping checks.
pub const MAX_BATCH: u64 = 4096;
const FIRST_BATCH: u64 = 64;

/// How a measurement point ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointStatus {
    /// Reached the target number of bit errors.
    TargetReached,
    /// Ran out of trials first.
    TrialCap,
    /// No trial was run at all; `ber` is meaningless.
    NoTrials,
}

/// One Monte-Carlo measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct BerRecord {
    pub snr_db: f64,
    pub trials: u64,
    pub bit_errors: u64,
    pub ber: f64,
    pub wall_seconds: f64,
    pub status: PointStatus,
}

pub const BER_CSV_HEADER: &str = "snr_db,trials,bit_errors,ber,wall_seconds";

pub fn write_ber_csv(records: &[BerRecord], mut out: impl Write) -> Result<()> {
    writeln!(out, "{BER_CSV_HEADER}")?;
    for r in records {
        writeln!(out, "{},{},{},{},{:.6}", r.snr_db, r.trials, r.bit_errors, r.ber, r.wall_seconds)?;
    }
    Ok(())
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of one trial, a function of the master seed and the trial's
/// coordinates only.
pub fn trial_seed(master: u64, snr_index: u64, trial: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ snr_index) ^ trial)
}

/// Bit errors between two symbol vectors under natural binary labelling.
pub fn bit_errors(sent: &[u32], decided: &[u32]) -> u64 {
    sent.iter().zip(decided).map(|(a, b)| (a ^ b).count_ones() as u64).sum()
}

/// Runs single trials for a fixed link and receiver.
#[derive(Debug, Clone)]
pub struct TrialRunner {
    link: LinkModel,
    receiver: ReceiverKind,
    ml: Option<MlDecoder>,
}

impl TrialRunner {
    pub fn new(link: LinkModel, receiver: ReceiverKind) -> Result<Self> {
        let ml = match receiver {
            ReceiverKind::Ml => Some(MlDecoder::new(link.design(), link.constellation())?),
            _ => None,
        };
        Ok(Self { link, receiver, ml })
    }

    pub fn link(&self) -> &LinkModel {
        &self.link
    }

    /// Bit errors of one codeword transmission; `seed` fixes the channel,
    /// the symbols and the noise.
    pub fn trial(&self, snr: f64, seed: u64) -> Result<u64> {
        let link = &self.link;
        let c = link.constellation();
        let mut sampler = GaussianSampler::new(seed);
        let ch = link.sample_channel(&mut sampler)?;
        let s = link.random_symbols(&mut sampler);
        let rx = link.transmit(&ch, &s, snr, &mut sampler)?;
        let decided = match self.receiver {
            ReceiverKind::If => if_decode(&rx.y, &IfEquations::design(&ch.heff, c, snr, link.nt())?, c)?,
            ReceiverKind::Zf => zf_decode(&rx.y, &ch.heff, c)?,
            ReceiverKind::Mmse => mmse_decode(&rx.y, &ch.heff, c, snr, link.nt())?,
            ReceiverKind::Ml => {
                let ml = self.ml.as_ref().expect("built for ML");
                ml.decode(&rx.to_complex(link.nr(), link.nt(), link.design().t()), &ch.h, snr)?
            }
        };
        Ok(bit_errors(&s, &decided.s_hat))
    }
}

/// BER versus SNR for `cfg`. Each point stops at `target_errors` bit
/// errors or `max_trials` trials. Trials are evaluated in parallel batches
/// but the stopping rule scans them in trial order, so the result does not
/// depend on the worker count.
pub fn run_ber_sweep(cfg: &SimConfig) -> Result<Vec<BerRecord>> {
    let runner = TrialRunner::new(cfg.link()?, cfg.receiver)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
    pool.install(|| {
        cfg.snr
            .points()
            .into_iter()
            .enumerate()
            .map(|(i, db)| run_point(&runner, cfg, i as u64, db))
            .collect()
    })
}

fn run_point(runner: &TrialRunner, cfg: &SimConfig, snr_index: u64, snr_db: f64) -> Result<BerRecord> {
    let started = Instant::now();
    let snr = db_to_linear(snr_db);
    let bits = runner.link().bits_per_codeword() as u64;
    let mut trials = 0u64;
    let mut errors = 0u64;
    let mut batch = FIRST_BATCH;
    let mut status = PointStatus::TrialCap;
    'outer: while trials < cfg.max_trials {
        let n = batch.min(cfg.max_trials - trials);
        let results: Vec<u64> = (trials..trials + n)
            .into_par_iter()
            .map(|t| runner.trial(snr, trial_seed(cfg.seed, snr_index, t)))
            .collect::<Result<_>>()?;
        for e in results {
            trials += 1;
            errors += e;
            if errors >= cfg.target_errors {
                status = PointStatus::TargetReached;
                break 'outer;
            }
        }
        batch = (batch * 2).min(MAX_BATCH);
    }
    if trials == 0 {
        status = PointStatus::NoTrials;
    }
    let ber = if trials == 0 { 0.0 } else { errors as f64 / (trials * bits) as f64 };
    let wall_seconds = if cfg.timing { started.elapsed().as_secs_f64() } else { 0.0 };
    Ok(BerRecord { snr_db, trials, bit_errors: errors, ber, wall_seconds, status })
}
