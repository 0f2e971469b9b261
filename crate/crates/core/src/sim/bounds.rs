use std::io::Write;

use crate::analysis::{lattice_min_dist_sq, lemma1_bound, theorem1_avg_bound, vblast_bound, BoundCurve};
use crate::channel::db_to_linear;
use crate::error::Result;
use crate::numerics::GaussianSampler;
use crate::stbc::{nvs_sigma_min, NvsMode};

use super::{trial_seed, BoundKind, SimConfig};

pub const BOUND_CSV_HEADER: &str = "snr_db,value,label";

pub fn write_bound_csv(curve: &BoundCurve, mut out: impl Write) -> Result<()> {
    writeln!(out, "{BOUND_CSV_HEADER}")?;
    for (db, v) in curve.snr_db.iter().zip(&curve.values) {
        writeln!(out, "{db},{v},{}", curve.label)?;
    }
    Ok(())
}

/// Evaluates `cfg.bound` over the SNR grid.
///
/// The theorem1 curve uses the singular values of the normalised codebook,
/// so `σ_min` of the design as given is multiplied by `γ`.
pub fn run_bound_eval(cfg: &SimConfig) -> Result<BoundCurve> {
    let link = cfg.link()?;
    let design = link.design();
    let (k, nt, nr) = (design.k(), design.nt(), cfg.nr);
    let grid = cfg.snr.points();
    match cfg.bound {
        BoundKind::Vblast => BoundCurve::from_fn("vblast", &grid, |db| Ok(vblast_bound(db_to_linear(db), nt, nr))),
        BoundKind::Theorem1 => {
            let sigma = match cfg.sigma_min {
                Some(s) => s,
                None => nvs_sigma_min(design, cfg.coeff_bound, NvsMode::Full)?.sigma_min,
            };
            let sigma2 = (link.gamma() * sigma).powi(2);
            BoundCurve::from_fn("theorem1", &grid, |db| theorem1_avg_bound(db_to_linear(db), k, nt, nr, sigma2))
        }
        BoundKind::Lemma1 => {
            let eps = (0..cfg.channels as u64)
                .map(|i| {
                    let mut sampler = GaussianSampler::new(trial_seed(cfg.seed, u64::MAX, i));
                    lattice_min_dist_sq(&link.sample_channel(&mut sampler)?.heff)
                })
                .collect::<Result<Vec<_>>>()?;
            BoundCurve::from_fn("lemma1", &grid, |db| {
                let p = db_to_linear(db);
                Ok(eps.iter().map(|&e| lemma1_bound(p, k, nt, e)).sum::<f64>() / eps.len().max(1) as f64)
            })
        }
    }
}
