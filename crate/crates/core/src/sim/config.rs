use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;

use crate::channel::LinkModel;
use crate::error::{Error, Result};
use crate::receiver::ReceiverKind;
use crate::stbc::{load_design, make_alamouti, make_vblast, Constellation, LinearDesign, DEFAULT_NVS_BOUND};

/// Which linear design to simulate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DesignSpec {
    Alamouti,
    /// Uncoded layered transmission over this many antennas.
    Vblast(usize),
    File(PathBuf),
}

impl DesignSpec {
    pub fn load(&self) -> Result<LinearDesign> {
        match self {
            Self::Alamouti => Ok(make_alamouti()),
            Self::Vblast(nt) => make_vblast(*nt),
            Self::File(path) => load_design(path),
        }
    }
}

impl FromStr for DesignSpec {
    type Err = Error;

    /// `alamouti`, `vblast` (two antennas), `vblast:N` or `file:PATH`.
    fn from_str(s: &str) -> Result<Self> {
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(Self::File(PathBuf::from(path)));
        }
        match s.split_once(':') {
            None if s == "alamouti" => Ok(Self::Alamouti),
            None if s == "vblast" => Ok(Self::Vblast(2)),
            Some(("vblast", n)) => n
                .parse()
                .ok()
                .filter(|&n| n > 0)
                .map(Self::Vblast)
                .ok_or_else(|| Error::Config(format!("bad antenna count in design '{s}'"))),
            _ => Err(Error::Config(format!("unknown design '{s}' (expected alamouti, vblast[:N] or file:PATH)"))),
        }
    }
}

impl fmt::Display for DesignSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Alamouti => f.write_str("alamouti"),
            Self::Vblast(n) => write!(f, "vblast:{n}"),
            Self::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

/// Inclusive SNR grid `start:stop:step` in dB.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrGrid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl SnrGrid {
    pub fn single(db: f64) -> Self {
        Self { start: db, stop: db, step: 1.0 }
    }

    pub fn points(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..n).map(|i| self.start + i as f64 * self.step).collect()
    }
}

impl FromStr for SnrGrid {
    type Err = Error;

    /// `START:STOP:STEP`, or a single value.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("bad SNR grid '{s}' (expected START:STOP:STEP in dB)"));
        let parts: Vec<f64> = s.split(':').map(|p| p.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| bad())?;
        let grid = match parts[..] {
            [db] => Self::single(db),
            [start, stop, step] => Self { start, stop, step },
            _ => return Err(bad()),
        };
        if !(grid.start.is_finite() && grid.stop.is_finite() && grid.step > 0.0 && grid.stop >= grid.start) {
            return Err(bad());
        }
        Ok(grid)
    }
}

/// Analytic curve selected by the `bound` verb.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    /// Per-layer `exp(−c·P·ε₁²)` averaged over sampled channels.
    Lemma1,
    /// `2K·(1 + c·P·γ²σ²_min)^{−nt·nr}`.
    Theorem1,
    /// `(1 + c·P)^{−nr}`.
    Vblast,
}

impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lemma1" => Ok(Self::Lemma1),
            "theorem1" => Ok(Self::Theorem1),
            "vblast" => Ok(Self::Vblast),
            _ => Err(Error::Config(format!("unknown bound '{s}' (expected lemma1, theorem1 or vblast)"))),
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Lemma1 => "lemma1",
            Self::Theorem1 => "theorem1",
            Self::Vblast => "vblast",
        })
    }
}

/// Fully resolved run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub design: DesignSpec,
    pub nr: usize,
    pub sqrt_m: u32,
    pub receiver: ReceiverKind,
    pub snr: SnrGrid,
    pub max_trials: u64,
    pub target_errors: u64,
    pub seed: u64,
    pub workers: usize,
    /// When false, `wall_seconds` is written as 0 so output files are
    /// byte-for-byte reproducible.
    pub timing: bool,
    pub bound: BoundKind,
    /// Minimum singular value for the theorem1 curve; searched when absent.
    pub sigma_min: Option<f64>,
    pub coeff_bound: u32,
    /// Channels averaged by the lemma1 curve.
    pub channels: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            design: DesignSpec::Alamouti,
            nr: 1,
            sqrt_m: 2,
            receiver: ReceiverKind::If,
            snr: SnrGrid { start: 0.0, stop: 30.0, step: 5.0 },
            max_trials: 1_000_000,
            target_errors: 200,
            seed: 0,
            workers: 1,
            timing: true,
            bound: BoundKind::Theorem1,
            sigma_min: None,
            coeff_bound: DEFAULT_NVS_BOUND,
            channels: 1000,
        }
    }
}

impl SimConfig {
    /// Loads the design and checks every invariant against it.
    pub fn link(&self) -> Result<LinkModel> {
        let design = self.design.load()?;
        self.check(&design)?;
        LinkModel::new(design, Constellation::new(self.sqrt_m)?, self.nr)
    }

    fn check(&self, design: &LinearDesign) -> Result<()> {
        Constellation::new(self.sqrt_m)
            .map_err(|_| Error::Config(format!("invariant 'sqrt_m is a power of two' violated: {}", self.sqrt_m)))?;
        if self.nr == 0 {
            return Err(Error::Config("invariant 'nr >= 1' violated".into()));
        }
        let rows = 2 * self.nr * design.t();
        if design.real_dim() > rows {
            return Err(Error::Config(format!(
                "invariant '2K <= 2*nr*T' violated: design {} has 2K = {} but 2*nr*T = {rows}",
                design.name(),
                design.real_dim()
            )));
        }
        if self.workers == 0 {
            return Err(Error::Config("invariant 'workers >= 1' violated".into()));
        }
        if self.sigma_min.is_some_and(|s| !(s >= 0.0)) {
            return Err(Error::Config("invariant 'sigma_min >= 0' violated".into()));
        }
        Ok(())
    }
}

/// Every setting optional: the shape of a config file and of the command
/// line. Later layers override earlier ones via [`PartialConfig::merge`].
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct PartialConfig {
    pub design: Option<String>,
    pub nr: Option<usize>,
    pub sqrt_m: Option<u32>,
    pub receiver: Option<ReceiverKind>,
    pub snr: Option<String>,
    pub trials: Option<u64>,
    pub target_errors: Option<u64>,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub timing: Option<bool>,
    pub bound: Option<BoundKind>,
    pub sigma_min: Option<f64>,
    pub coeff_bound: Option<u32>,
    pub channels: Option<usize>,
}

impl PartialConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::from_toml(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Fields set in `over` replace those in `self`.
    pub fn merge(self, over: Self) -> Self {
        Self {
            design: over.design.or(self.design),
            nr: over.nr.or(self.nr),
            sqrt_m: over.sqrt_m.or(self.sqrt_m),
            receiver: over.receiver.or(self.receiver),
            snr: over.snr.or(self.snr),
            trials: over.trials.or(self.trials),
            target_errors: over.target_errors.or(self.target_errors),
            seed: over.seed.or(self.seed),
            workers: over.workers.or(self.workers),
            timing: over.timing.or(self.timing),
            bound: over.bound.or(self.bound),
            sigma_min: over.sigma_min.or(self.sigma_min),
            coeff_bound: over.coeff_bound.or(self.coeff_bound),
            channels: over.channels.or(self.channels),
        }
    }

    /// Fills unset fields from [`SimConfig::default`] and validates.
    pub fn resolve(self) -> Result<SimConfig> {
        let d = SimConfig::default();
        let cfg = SimConfig {
            design: self.design.as_deref().map(str::parse).transpose()?.unwrap_or(d.design),
            nr: self.nr.unwrap_or(d.nr),
            sqrt_m: self.sqrt_m.unwrap_or(d.sqrt_m),
            receiver: self.receiver.unwrap_or(d.receiver),
            snr: self.snr.as_deref().map(str::parse).transpose()?.unwrap_or(d.snr),
            max_trials: self.trials.unwrap_or(d.max_trials),
            target_errors: self.target_errors.unwrap_or(d.target_errors),
            seed: self.seed.unwrap_or(d.seed),
            workers: self.workers.unwrap_or(d.workers),
            timing: self.timing.unwrap_or(d.timing),
            bound: self.bound.unwrap_or(d.bound),
            sigma_min: self.sigma_min.or(d.sigma_min),
            coeff_bound: self.coeff_bound.unwrap_or(d.coeff_bound),
            channels: self.channels.unwrap_or(d.channels),
        };
        cfg.check(&cfg.design.load()?)?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn design_specs() {
        assert_eq!("alamouti".parse::<DesignSpec>().unwrap(), DesignSpec::Alamouti);
        assert_eq!("vblast".parse::<DesignSpec>().unwrap(), DesignSpec::Vblast(2));
        assert_eq!("vblast:3".parse::<DesignSpec>().unwrap(), DesignSpec::Vblast(3));
        assert_eq!("file:a/b.txt".parse::<DesignSpec>().unwrap(), DesignSpec::File("a/b.txt".into()));
        assert!("vblast:0".parse::<DesignSpec>().is_err());
        assert!("golden".parse::<DesignSpec>().is_err());
    }

    #[test]
    fn snr_grid_is_inclusive() {
        assert_eq!("0:30:1".parse::<SnrGrid>().unwrap().points().len(), 31);
        assert_eq!("20:30:5".parse::<SnrGrid>().unwrap().points(), vec![20.0, 25.0, 30.0]);
        assert_eq!("0:1:0.1".parse::<SnrGrid>().unwrap().points().len(), 11);
        assert_eq!("25".parse::<SnrGrid>().unwrap().points(), vec![25.0]);
        assert!("10:0:1".parse::<SnrGrid>().is_err());
        assert!("0:10:0".parse::<SnrGrid>().is_err());
        assert!("0:10".parse::<SnrGrid>().is_err());
    }

    #[test]
    fn flags_override_file() {
        let file = PartialConfig::from_toml("design = \"vblast:2\"\nnr = 2\nseed = 7\nsqrt-m = 4\n").unwrap();
        let flags = PartialConfig { seed: Some(9), ..Default::default() };
        let cfg = file.merge(flags).resolve().unwrap();
        assert_eq!(cfg.design, DesignSpec::Vblast(2));
        assert_eq!((cfg.nr, cfg.seed, cfg.sqrt_m), (2, 9, 4));
        assert_eq!(cfg.target_errors, 200);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(PartialConfig::from_toml("colour = 3").is_err());
    }

    #[test]
    fn underdetermined_config_names_invariant() {
        let p = PartialConfig { design: Some("vblast:3".into()), nr: Some(1), ..Default::default() };
        let err = p.resolve().unwrap_err().to_string();
        assert!(err.contains("2K <= 2*nr*T"), "{err}");
    }

    #[test]
    fn bad_constellation_names_invariant() {
        let p = PartialConfig { sqrt_m: Some(3), ..Default::default() };
        assert!(p.resolve().unwrap_err().to_string().contains("power of two"));
    }
}
