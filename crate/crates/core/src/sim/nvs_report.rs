use std::fmt;

use crate::error::Result;
use crate::stbc::{nvs_sigma_min, LinearDesign, NvsEstimate, NvsMode};

/// Values below this count as a vanishing singular value.
pub const NVS_ZERO_TOL: f64 = 1e-9;

/// Both singular-value estimates of a design and the resulting verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct NvsReport {
    pub design: String,
    pub coeff_bound: u32,
    pub full: NvsEstimate,
    pub nonzero: NvsEstimate,
}

impl NvsReport {
    /// True when no searched codeword has a vanishing smallest singular
    /// value. A pass is not a proof: larger coefficients are not searched.
    pub fn passes(&self) -> bool {
        self.full.sigma_min > NVS_ZERO_TOL
    }
}

pub fn run_nvs_report(design: &LinearDesign, coeff_bound: u32) -> Result<NvsReport> {
    Ok(NvsReport {
        design: design.name().to_string(),
        coeff_bound,
        full: nvs_sigma_min(design, coeff_bound, NvsMode::Full)?,
        nonzero: nvs_sigma_min(design, coeff_bound, NvsMode::Nonzero)?,
    })
}

fn line(f: &mut fmt::Formatter<'_>, label: &str, e: &NvsEstimate) -> fmt::Result {
    writeln!(f, "{label:<18}{:.12}  minimizer {:?}  searched {}", e.sigma_min, e.minimizer, e.searched)
}

impl fmt::Display for NvsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "design            {}", self.design)?;
        writeln!(f, "coefficient box   [-{0}, {0}]", self.coeff_bound)?;
        line(f, "sigma_min full", &self.full)?;
        line(f, "sigma_min nonzero", &self.nonzero)?;
        let verdict = if self.passes() { "PASS" } else { "FAIL" };
        writeln!(f, "NVS verdict       {verdict}")?;
        write!(
            f,
            "note: the search covers the box only; FAIL is conclusive only when a codeword in the box has \
             sigma_min exactly 0, and PASS does not exclude a smaller value outside it"
        )
    }
}
