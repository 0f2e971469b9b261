use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use ifstbc::receiver::ReceiverKind;
use ifstbc::sim::{
    run_ber_sweep, run_bound_eval, run_nvs_report, write_ber_csv, write_bound_csv, BoundKind, PartialConfig,
    PointStatus,
};

/// Integer-forcing receivers for space-time block codes.
#[derive(Debug, Parser)]
#[command(name = "ifstbc", version)]
struct Cli {
    /// TOML file with the same keys as the long flags; flags win.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Monte-Carlo BER sweep, written as CSV.
    Simulate(RunArgs),
    /// Analytic error-probability bound over the SNR grid, written as CSV.
    Bound {
        #[command(flatten)]
        run: RunArgs,
        /// lemma1, theorem1 or vblast
        #[arg(long, value_parser = parse_bound)]
        bound: Option<BoundKind>,
        /// Minimum singular value of the design; searched when omitted.
        #[arg(long)]
        sigma_min: Option<f64>,
        /// Channels averaged by the lemma1 curve.
        #[arg(long)]
        channels: Option<usize>,
    },
    /// Non-vanishing singular value report for a design.
    Nvs(RunArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// alamouti, vblast, vblast:N or file:PATH
    #[arg(long)]
    design: Option<String>,
    /// Receive antennas
    #[arg(long)]
    nr: Option<usize>,
    /// PAM size per real dimension (power of two)
    #[arg(long)]
    sqrt_m: Option<u32>,
    /// if, zf, mmse or ml
    #[arg(long, value_parser = parse_receiver)]
    receiver: Option<ReceiverKind>,
    /// START:STOP:STEP in dB, inclusive
    #[arg(long)]
    snr: Option<String>,
    /// Trial cap per SNR point
    #[arg(long)]
    trials: Option<u64>,
    /// Stop a point once this many bit errors are seen
    #[arg(long)]
    target_errors: Option<u64>,
    /// Master seed
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; results do not depend on this
    #[arg(long)]
    workers: Option<usize>,
    /// Coefficient box half-width for the NVS search
    #[arg(long)]
    coeff_bound: Option<u32>,
    /// Write 0 in the wall_seconds column
    #[arg(long)]
    no_timing: bool,
    /// Output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn partial(&self) -> PartialConfig {
        PartialConfig {
            design: self.design.clone(),
            nr: self.nr,
            sqrt_m: self.sqrt_m,
            receiver: self.receiver,
            snr: self.snr.clone(),
            trials: self.trials,
            target_errors: self.target_errors,
            seed: self.seed,
            workers: self.workers,
            timing: self.no_timing.then_some(false),
            coeff_bound: self.coeff_bound,
            ..Default::default()
        }
    }
}

fn parse_receiver(s: &str) -> Result<ReceiverKind, String> {
    s.parse().map_err(|e: ifstbc::Error| e.to_string())
}

fn parse_bound(s: &str) -> Result<BoundKind, String> {
    s.parse().map_err(|e: ifstbc::Error| e.to_string())
}

fn open_out(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let base = match &cli.config {
        Some(p) => PartialConfig::from_file(p)?,
        None => PartialConfig::default(),
    };
    match &cli.command {
        Command::Simulate(run) => {
            let cfg = base.merge(run.partial()).resolve()?;
            let records = run_ber_sweep(&cfg)?;
            for r in records.iter().filter(|r| r.status == PointStatus::NoTrials) {
                eprintln!("warning: no trials run at {} dB; ber is not an estimate", r.snr_db);
            }
            let mut out = open_out(&run.out)?;
            write_ber_csv(&records, &mut out)?;
            out.flush()?;
        }
        Command::Bound { run, bound, sigma_min, channels } => {
            let over = PartialConfig { bound: *bound, sigma_min: *sigma_min, channels: *channels, ..run.partial() };
            let cfg = base.merge(over).resolve()?;
            let curve = run_bound_eval(&cfg)?;
            let mut out = open_out(&run.out)?;
            write_bound_csv(&curve, &mut out)?;
            out.flush()?;
        }
        Command::Nvs(run) => {
            let cfg = base.merge(run.partial()).resolve()?;
            let report = run_nvs_report(&cfg.design.load()?, cfg.coeff_bound)?;
            let mut out = open_out(&run.out)?;
            writeln!(out, "{report}")?;
            out.flush()?;
        }
    }
    Ok(())
}
