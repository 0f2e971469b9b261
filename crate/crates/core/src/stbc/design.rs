use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, RealMatrix};

use super::Constellation;

/// A linear dispersion design `X(s) = Σ_k D_k s_k` in `2K` real variables.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearDesign {
    name: String,
    nt: usize,
    t: usize,
    weights: Vec<ComplexMatrix>,
}

impl LinearDesign {
    /// Validates that there is an even, nonzero number of weight matrices,
    /// all `nt × t`.
    pub fn new(name: impl Into<String>, nt: usize, t: usize, weights: Vec<ComplexMatrix>) -> Result<Self> {
        if nt == 0 || t == 0 {
            return Err(Error::InvalidDesign(format!("empty codeword shape {nt}x{t}")));
        }
        if weights.is_empty() || weights.len() % 2 != 0 {
            return Err(Error::InvalidDesign(format!(
                "expected an even, nonzero number of weight matrices, got {}",
                weights.len()
            )));
        }
        if let Some(k) = weights.iter().position(|w| w.rows() != nt || w.cols() != t) {
            return Err(Error::InvalidDesign(format!(
                "weight {} is {}x{}, expected {nt}x{t}",
                k + 1,
                weights[k].rows(),
                weights[k].cols()
            )));
        }
        Ok(Self { name: name.into(), nt, t, weights })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Transmit antennas.
    pub fn nt(&self) -> usize {
        self.nt
    }

    /// Channel uses per codeword.
    pub fn t(&self) -> usize {
        self.t
    }

    /// Complex symbols per codeword (`2K` real variables).
    pub fn k(&self) -> usize {
        self.weights.len() / 2
    }

    /// Number of real variables, `2K`.
    pub fn real_dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[ComplexMatrix] {
        &self.weights
    }

    /// `Σ_k D_k c_k` for arbitrary real coefficients.
    pub fn combine(&self, coeffs: &[f64]) -> ComplexMatrix {
        assert_eq!(coeffs.len(), self.weights.len(), "coefficient count");
        let mut x = ComplexMatrix::zeros(self.nt, self.t);
        for (w, &c) in self.weights.iter().zip(coeffs) {
            if c != 0.0 {
                x.add_scaled(w, c);
            }
        }
        x
    }

    /// Same design with every weight multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let weights = self.weights.iter().map(|w| w.scale(Complex64::new(factor, 0.0))).collect();
        Self { name: self.name.clone(), nt: self.nt, t: self.t, weights }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The Alamouti design `[[x1, x2], [−x2*, x1*]]` with `x1 = s1 + i·s2` and
/// `x2 = s3 + i·s4`.
pub fn make_alamouti() -> LinearDesign {
    let z = c(0.0, 0.0);
    let weights = vec![
        ComplexMatrix::from_rows(&[[c(1.0, 0.0), z], [z, c(1.0, 0.0)]]),
        ComplexMatrix::from_rows(&[[c(0.0, 1.0), z], [z, c(0.0, -1.0)]]),
        ComplexMatrix::from_rows(&[[z, c(1.0, 0.0)], [c(-1.0, 0.0), z]]),
        ComplexMatrix::from_rows(&[[z, c(0.0, 1.0)], [c(0.0, 1.0), z]]),
    ];
    LinearDesign::new("alamouti", 2, 2, weights).expect("static design is valid")
}

/// Uncoded layered transmission over `nt` antennas: `T = 1` and weights
/// `e_1, i·e_1, …, e_nt, i·e_nt`.
pub fn make_vblast(nt: usize) -> Result<LinearDesign> {
    if nt == 0 {
        return Err(Error::InvalidDesign("V-BLAST needs at least one antenna".into()));
    }
    let mut weights = Vec::with_capacity(2 * nt);
    for j in 0..nt {
        for unit in [c(1.0, 0.0), c(0.0, 1.0)] {
            let mut e = ComplexMatrix::zeros(nt, 1);
            e[(j, 0)] = unit;
            weights.push(e);
        }
    }
    LinearDesign::new(format!("vblast{nt}"), nt, 1, weights)
}

/// Stacks `[Re X; Im X]` (a `2nt × T` real matrix) row by row into a vector
/// of length `2·nt·T`.
pub fn vectorize(x: &ComplexMatrix) -> Vec<f64> {
    let (rows, cols) = (x.rows(), x.cols());
    let mut v = vec![0.0; 2 * rows * cols];
    for i in 0..rows {
        for j in 0..cols {
            v[i * cols + j] = x[(i, j)].re;
            v[(i + rows) * cols + j] = x[(i, j)].im;
        }
    }
    v
}

/// Inverse of [`vectorize`].
pub fn unvectorize(v: &[f64], rows: usize, cols: usize) -> ComplexMatrix {
    assert_eq!(v.len(), 2 * rows * cols);
    let mut x = ComplexMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            x[(i, j)] = c(v[i * cols + j], v[(i + rows) * cols + j]);
        }
    }
    x
}

/// The `2·nt·T × 2K` code matrix `R`: column `k` is [`vectorize`]`(D_k)`.
///
/// With this stacking, `vectorize(H·X(s)) = (H′ ⊗ I_T)·R·s`.
pub fn build_code_matrix(design: &LinearDesign) -> RealMatrix {
    let n = 2 * design.nt() * design.t();
    let mut r = RealMatrix::zeros(n, design.real_dim());
    for (k, w) in design.weights().iter().enumerate() {
        for (i, v) in vectorize(w).into_iter().enumerate() {
            r[(i, k)] = v;
        }
    }
    r
}

/// A transmitted codeword and the ring symbols it carries.
#[derive(Debug, Clone, PartialEq)]
pub struct Codeword {
    pub x: ComplexMatrix,
    pub s: Vec<u32>,
}

/// `X = γ · Σ_k D_k (s_k − offset)`.
pub fn encode(design: &LinearDesign, constellation: &Constellation, s: &[u32], gamma: f64) -> Result<Codeword> {
    if s.len() != design.real_dim() {
        return Err(Error::DimensionMismatch(format!(
            "{} symbols for a design in {} real variables",
            s.len(),
            design.real_dim()
        )));
    }
    constellation.check_symbols(s)?;
    let coeffs: Vec<f64> = s.iter().map(|&v| gamma * constellation.shifted(v)).collect();
    Ok(Codeword { x: design.combine(&coeffs), s: s.to_vec() })
}

/// Scale `γ` giving unit average energy per codeword entry.
///
/// The shifted symbols are i.i.d., zero-mean with variance `Ē` over the
/// full codebook, so the codebook average of `|X_{i,t}|²` is exactly
/// `Ē · Σ_k ‖D_k‖²_F / (nt·T)` for `γ = 1`.
pub fn normalization_factor(design: &LinearDesign, constellation: &Constellation) -> Result<f64> {
    let weight_energy: f64 = design.weights().iter().map(ComplexMatrix::frobenius_norm_sqr).sum();
    if weight_energy == 0.0 {
        return Err(Error::DegenerateDesign);
    }
    let per_entry = constellation.ebar() * weight_energy / (design.nt() * design.t()) as f64;
    Ok(1.0 / per_entry.sqrt())
}
