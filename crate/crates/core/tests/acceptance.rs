//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines are always printed; exits nonzero if any
//! criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use ifstbc::analysis::{
    diversity_slope, dual_gram, dual_last_minimum_sq, lattice_min_dist_sq, lemma1_constant, transference_factor,
    vblast_constant, chernoff_layer_bound,
};
use ifstbc::channel::{db_to_linear, LinkModel};
use ifstbc::numerics::{enumerate_short_vectors, GaussianSampler, IntMatrix, RealMatrix};
use ifstbc::receiver::{
    if_decode, if_select_a, mmse_decode, pseudo_inverse, solve_layers, IfEquations, ReceiverKind,
};
use ifstbc::sim::{run_ber_sweep, BerRecord, DesignSpec, SimConfig};
use ifstbc::stbc::{make_alamouti, make_vblast, nvs_sigma_min, Constellation, NvsMode};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn slope_of(records: &[BerRecord]) -> Result<f64, String> {
    let pts: Vec<(f64, f64)> = records.iter().map(|r| (r.snr_db, r.ber)).collect();
    diversity_slope(&pts).map_err(|e| e.to_string())
}

fn describe(records: &[BerRecord]) -> String {
    records.iter().map(|r| format!("{}dB:{:.2e}({} err/{} trials)", r.snr_db, r.ber, r.bit_errors, r.trials)).collect::<Vec<_>>().join(" ")
}

fn alamouti_diversity() -> Outcome {
    let cfg = SimConfig {
        design: DesignSpec::Alamouti,
        nr: 1,
        sqrt_m: 2,
        receiver: ReceiverKind::If,
        snr: "20:30:5".parse().unwrap(),
        max_trials: 200_000_000,
        target_errors: 200,
        seed: 1,
        timing: false,
        ..Default::default()
    };
    let recs = run_ber_sweep(&cfg).map_err(|e| e.to_string())?;
    let slope = slope_of(&recs)?;
    check((1.7..=2.3).contains(&slope), format!("slope {slope:.3} in [1.7, 2.3]; {}", describe(&recs)))
}

/// SNR in dB where a BER curve first drops to `target`, interpolated in
/// `log10(BER)`.
fn crossing(recs: &[BerRecord], target: f64) -> Option<f64> {
    recs.windows(2).find(|w| w[0].ber > target && w[1].ber <= target && w[1].ber > 0.0).map(|w| {
        let (l0, l1, lt) = (w[0].ber.log10(), w[1].ber.log10(), target.log10());
        w[0].snr_db + (w[1].snr_db - w[0].snr_db) * (l0 - lt) / (l0 - l1)
    })
}

fn ml_dominance() -> Outcome {
    let base = SimConfig {
        design: DesignSpec::Alamouti,
        nr: 1,
        sqrt_m: 2,
        snr: "0:20:2".parse().unwrap(),
        max_trials: 100_000,
        target_errors: u64::MAX,
        seed: 2,
        timing: false,
        ..Default::default()
    };
    let ml = run_ber_sweep(&SimConfig { receiver: ReceiverKind::Ml, ..base.clone() }).map_err(|e| e.to_string())?;
    let ifr = run_ber_sweep(&SimConfig { receiver: ReceiverKind::If, ..base }).map_err(|e| e.to_string())?;
    let dominated = ml.iter().zip(&ifr).all(|(m, i)| m.bit_errors <= i.bit_errors);
    let (Some(x_ml), Some(x_if)) = (crossing(&ml, 1e-3), crossing(&ifr, 1e-3)) else {
        return Err("BER 1e-3 not crossed on the grid".into());
    };
    let gap = x_if - x_ml;
    check(
        dominated && gap <= 3.0,
        format!(
            "ML <= IF at all {} points: {dominated}; BER 1e-3 at {x_ml:.2} dB (ML) vs {x_if:.2} dB (IF), gap {gap:.2} dB <= 3",
            ml.len()
        ),
    )
}

fn vblast_diversity() -> Outcome {
    let cfg = SimConfig {
        design: DesignSpec::Vblast(2),
        nr: 2,
        sqrt_m: 2,
        receiver: ReceiverKind::If,
        snr: "15:25:5".parse().unwrap(),
        max_trials: 200_000_000,
        target_errors: 200,
        seed: 3,
        timing: false,
        ..Default::default()
    };
    let recs = run_ber_sweep(&cfg).map_err(|e| e.to_string())?;
    let slope = slope_of(&recs)?;
    check((1.6..=2.6).contains(&slope), format!("slope {slope:.3} in [1.6, 2.6]; {}", describe(&recs)))
}

/// Step-1 layer errors with the exact-forcing filter `B = A·𝓗⁺`, against
/// `exp(−P / (4·nt·‖b_m‖²))`.
fn chernoff_validity() -> Outcome {
    const TRIALS: u64 = 1_000_000;
    let q = Constellation::new(2).unwrap();
    let link = LinkModel::new(make_vblast(2).unwrap(), q, 2).unwrap();
    let snr = db_to_linear(25.0);
    let nt = link.nt();
    let mut sampler = GaussianSampler::new(4);
    let mut violations = 0;
    let mut worst = f64::INFINITY;
    let mut layers = 0;
    let mut nonzero_layers = 0;
    for _ in 0..20 {
        let ch = link.sample_channel(&mut sampler).map_err(|e| e.to_string())?;
        let eq = IfEquations::design(&ch.heff, &q, snr, nt).map_err(|e| e.to_string())?;
        let b = eq.a.to_real().matmul(&pseudo_inverse(&ch.heff).unwrap()).unwrap();
        let n = eq.a.rows();
        let shift: Vec<f64> = (0..n).map(|m| q.offset() * eq.a.row(m).iter().sum::<i64>() as f64).collect();
        let mut errors = vec![0u64; n];
        for _ in 0..TRIALS {
            let s = link.random_symbols(&mut sampler);
            let y = link.transmit(&ch, &s, snr, &mut sampler).unwrap().y;
            let x: Vec<i64> = s.iter().map(|&v| v as i64).collect();
            let target = eq.a.mul_vec(&x);
            let filtered = b.mul_vec(&y).unwrap();
            for m in 0..n {
                if (filtered[m] + shift[m]).round() as i64 != target[m] {
                    errors[m] += 1;
                }
            }
        }
        for m in 0..n {
            let bound = chernoff_layer_bound(snr, nt, b.row(m).iter().map(|v| v * v).sum());
            let rate = errors[m] as f64 / TRIALS as f64;
            layers += 1;
            nonzero_layers += usize::from(errors[m] > 0);
            if rate > bound {
                violations += 1;
            }
            if errors[m] > 0 {
                worst = worst.min(bound / rate);
            }
        }
    }
    check(
        violations == 0,
        format!(
            "{violations} violations over {layers} layers (20 channels, V-BLAST 2x2, 25 dB, {TRIALS} trials); \
             {nonzero_layers} layers with errors, smallest bound/empirical ratio among them {worst:.3}"
        ),
    )
}

fn successive_minima_chain() -> Outcome {
    let q = Constellation::new(2).unwrap();
    let link = LinkModel::new(make_vblast(2).unwrap(), q, 2).unwrap();
    let k = link.design().k();
    let factor = transference_factor(k);
    let mut sampler = GaussianSampler::new(5);
    let (mut chain_violations, mut select_violations) = (0, 0);
    let mut worst_chain: f64 = 0.0;
    for _ in 0..100 {
        let ch = link.sample_channel(&mut sampler).map_err(|e| e.to_string())?;
        let eps1 = lattice_min_dist_sq(&ch.heff).map_err(|e| e.to_string())?;
        let dual_last = dual_last_minimum_sq(&ch.heff).map_err(|e| e.to_string())?;
        worst_chain = worst_chain.max(dual_last * eps1 / factor);
        if dual_last > factor / eps1 * (1.0 + 1e-9) {
            chain_violations += 1;
        }
        // P → ∞: the IF Gram is proportional to the dual Gram.
        let dual = dual_gram(&ch.heff).map_err(|e| e.to_string())?;
        let a = if_select_a(&dual, q.sqrt_m()).map_err(|e| e.to_string())?;
        let worst_row = (0..a.rows()).map(|m| dual.norm2(a.row(m))).fold(0.0, f64::max);
        if worst_row > dual_last * (1.0 + 1e-9) {
            select_violations += 1;
        }
    }
    check(
        chain_violations == 0 && select_violations == 0,
        format!(
            "100 V-BLAST 2x2 channels (4-dim): transference violations {chain_violations}, max eps2K*^2*eps1^2/(2K^3+3K^2) = \
             {worst_chain:.3}; selected rows above eps2K*^2: {select_violations}"
        ),
    )
}

fn nvs_exactness() -> Outcome {
    let ala = nvs_sigma_min(&make_alamouti(), 3, NvsMode::Full).map_err(|e| e.to_string())?.sigma_min;
    let mut ok = (ala - 1.0).abs() <= 1e-9;
    let mut detail = format!("alamouti {ala:.12}");
    for nt in 1..=3 {
        let bound = if nt == 3 { 2 } else { 3 };
        let v = nvs_sigma_min(&make_vblast(nt).unwrap(), bound, NvsMode::Nonzero).map_err(|e| e.to_string())?.sigma_min;
        ok &= (v - 1.0).abs() <= 1e-9;
        detail.push_str(&format!("; vblast{nt} nonzero {v:.12}"));
    }
    check(ok, detail)
}

fn oracle_select() -> Result<String, String> {
    let mut sampler = GaussianSampler::new(71);
    let mut mismatches = 0;
    let mut outside_box = 0;
    for _ in 0..50 {
        let g = common::random_gram(&mut sampler, 4);
        let a = if_select_a(&g, 2).map_err(|e| e.to_string())?;
        let ours = (0..4).map(|m| g.norm2(a.row(m))).fold(0.0, f64::max);
        let brute = common::brute_force_odd_minimax(&g, 2).ok_or("no odd-determinant matrix in the box")?;
        let in_box = a.as_slice().iter().all(|v| v.abs() <= 2);
        outside_box += usize::from(!in_box);
        let tol = 1e-9 * brute;
        if ours > brute + tol || (in_box && (ours - brute).abs() > tol) {
            mismatches += 1;
        }
    }
    check(mismatches == 0, format!("(a) {mismatches}/50 mismatches ({outside_box} optima outside the box)"))
}

fn oracle_enumeration() -> Result<String, String> {
    let mut sampler = GaussianSampler::new(72);
    let mut mismatches = 0;
    let mut compared = 0;
    let mut total = 0;
    while compared < 100 {
        let n = 2 + compared % 3;
        let g = common::random_gram(&mut sampler, n);
        let radius = 1.5 * (0..n).map(|i| g.gram()[(i, i)]).fold(0.0, f64::max);
        if common::coefficient_bound(&g, radius) > 6 {
            continue;
        }
        compared += 1;
        let ours = enumerate_short_vectors(&g, radius, usize::MAX).map_err(|e| e.to_string())?;
        let brute = common::brute_force_short(&g, radius);
        total += brute.len();
        if ours.len() != brute.len() || ours.iter().zip(&brute).any(|(a, b)| a.coeffs != b.coeffs) {
            mismatches += 1;
        }
    }
    check(mismatches == 0, format!("(b) {mismatches}/100 mismatches ({total} vectors)"))
}

fn oracle_step3() -> Result<String, String> {
    let mut sampler = GaussianSampler::new(73);
    let mut mismatches = 0;
    for m in [2u32, 4] {
        let q = Constellation::new(m).unwrap();
        for _ in 0..50 {
            let a = common::random_odd_matrix(&mut sampler, 4, 3);
            let eq = IfEquations::with_matrix(&RealMatrix::identity(4), a.clone(), &q, 100.0, 1)
                .map_err(|e| e.to_string())?;
            let layers: Vec<i64> = (0..4).map(|_| sampler.uniform_below(21) as i64 - 10).collect();
            let r: Vec<u32> = layers.iter().map(|&v| v.rem_euclid(m as i64) as u32).collect();
            let all = common::exhaustive_solutions(&a, &r, m);
            if all.len() != 1 || all[0] != solve_layers(&eq, &layers) {
                mismatches += 1;
            }
        }
    }
    check(mismatches == 0, format!("(c) {mismatches}/100 mismatches"))
}

fn oracle_mmse() -> Result<String, String> {
    let q = Constellation::new(4).unwrap();
    let link = LinkModel::new(make_vblast(2).unwrap(), q, 2).unwrap();
    let snr = db_to_linear(12.0);
    let mut sampler = GaussianSampler::new(74);
    let (mut layer_mismatch, mut symbol_mismatch, mut clamped) = (0, 0, 0);
    for _ in 0..1000 {
        let ch = link.sample_channel(&mut sampler).map_err(|e| e.to_string())?;
        let s = link.random_symbols(&mut sampler);
        let y = link.transmit(&ch, &s, snr, &mut sampler).unwrap().y;
        let eq = IfEquations::with_matrix(&ch.heff, IntMatrix::identity(4), &q, snr, link.nt()).unwrap();
        let ifd = if_decode(&y, &eq, &q).unwrap();
        let mm = mmse_decode(&y, &ch.heff, &q, snr, link.nt()).unwrap();
        layer_mismatch += usize::from(ifd.layer_integers != mm.layer_integers);
        if mm.ok {
            symbol_mismatch += usize::from(ifd.s_hat != mm.s_hat);
        } else {
            clamped += 1;
        }
    }
    check(
        layer_mismatch == 0 && symbol_mismatch == 0,
        format!("(d) 1000 trials: layer mismatches {layer_mismatch}, symbol mismatches {symbol_mismatch} ({clamped} clamped trials skipped)"),
    )
}

fn oracle_equivalences() -> Outcome {
    let parts = [oracle_select(), oracle_enumeration(), oracle_step3(), oracle_mmse()];
    let ok = parts.iter().all(Result::is_ok);
    let detail = parts.into_iter().map(|p| p.unwrap_or_else(|e| e)).collect::<Vec<_>>().join("; ");
    check(ok, detail)
}

fn constants() -> Outcome {
    let a = lemma1_constant(2, 2);
    let b = vblast_constant(2);
    check(a == 1.0 / 224.0 && b == 1.0 / 224.0, format!("c(K=2, nt=2) = 1/{}, V-BLAST nt=2 c = 1/{}", 1.0 / a, 1.0 / b))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("Alamouti 2x1 IF full diversity", alamouti_diversity),
        ("ML dominance over IF", ml_dominance),
        ("V-BLAST 2x2 IF receive diversity", vblast_diversity),
        ("Chernoff layer bound validity", chernoff_validity),
        ("successive-minima chain", successive_minima_chain),
        ("NVS analyser exactness", nvs_exactness),
        ("oracle equivalences", oracle_equivalences),
        ("bound constants", constants),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = run();
        let secs = started.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} criterion {} ({name}, {secs:.1}s): {detail}", i + 1);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
