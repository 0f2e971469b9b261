//! Exhaustive maximum-likelihood decoding over the full codebook.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;
use crate::stbc::{encode, normalization_factor, Constellation, LinearDesign};

use super::DecodeResult;

/// Largest codebook searched exhaustively.
pub const ML_BUDGET: u128 = 1_000_000;

/// Precomputed codebook `{X(s)}` in lexicographic order of `s`.
#[derive(Debug, Clone)]
pub struct MlDecoder {
    nt: usize,
    symbols: Vec<Vec<u32>>,
    codewords: Vec<ComplexMatrix>,
}

impl MlDecoder {
    pub fn new(design: &LinearDesign, constellation: &Constellation) -> Result<Self> {
        let q = constellation.sqrt_m();
        let n = design.real_dim();
        let size = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if size > ML_BUDGET {
            return Err(Error::MlBudgetExceeded { codewords: size });
        }
        let gamma = normalization_factor(design, constellation)?;
        let mut symbols = Vec::with_capacity(size as usize);
        let mut codewords = Vec::with_capacity(size as usize);
        let mut s = vec![0u32; n];
        loop {
            codewords.push(encode(design, constellation, &s, gamma)?.x);
            symbols.push(s.clone());
            let mut i = n;
            loop {
                if i == 0 {
                    return Ok(Self { nt: design.nt(), symbols, codewords });
                }
                i -= 1;
                s[i] += 1;
                if s[i] < q {
                    break;
                }
                s[i] = 0;
            }
        }
    }

    pub fn codebook_len(&self) -> usize {
        self.codewords.len()
    }

    /// `argmin_s ‖Y − √(P/nt)·H·X(s)‖²_F`; the first minimiser in
    /// lexicographic order wins ties. Also returns the number of codewords
    /// compared.
    pub fn decode_counted(&self, y: &ComplexMatrix, h: &ComplexMatrix, snr: f64) -> Result<(DecodeResult, usize)> {
        let scale = Complex64::new((snr / self.nt as f64).sqrt(), 0.0);
        let hs = h.scale(scale);
        let mut best = f64::INFINITY;
        let mut best_idx = 0;
        let mut visited = 0;
        for (idx, x) in self.codewords.iter().enumerate() {
            visited += 1;
            let hx = hs.matmul(x)?;
            let metric: f64 = y.as_slice().iter().zip(hx.as_slice()).map(|(a, b)| (a - b).norm_sqr()).sum();
            if metric < best {
                best = metric;
                best_idx = idx;
            }
        }
        let s_hat = self.symbols[best_idx].clone();
        let layer_integers = s_hat.iter().map(|&v| v as i64).collect();
        Ok((DecodeResult { s_hat, layer_integers, ok: true }, visited))
    }

    pub fn decode(&self, y: &ComplexMatrix, h: &ComplexMatrix, snr: f64) -> Result<DecodeResult> {
        self.decode_counted(y, h, snr).map(|(r, _)| r)
    }
}

/// One-shot ML decode; builds the codebook on every call, so prefer
/// [`MlDecoder`] inside loops.
pub fn ml_decode(
    y: &ComplexMatrix,
    h: &ComplexMatrix,
    design: &LinearDesign,
    constellation: &Constellation,
    snr: f64,
) -> Result<DecodeResult> {
    MlDecoder::new(design, constellation)?.decode(y, h, snr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stbc::{make_alamouti, make_vblast};

    #[test]
    fn alamouti_binary_codebook_has_sixteen_words() {
        let dec = MlDecoder::new(&make_alamouti(), &Constellation::new(2).unwrap()).unwrap();
        assert_eq!(dec.codebook_len(), 16);
        let h = ComplexMatrix::from_rows(&[[Complex64::new(0.3, -1.0), Complex64::new(0.8, 0.1)]]);
        let y = ComplexMatrix::zeros(1, 2);
        let (_, visited) = dec.decode_counted(&y, &h, 10.0).unwrap();
        assert_eq!(visited, 16);
    }

    #[test]
    fn budget_is_enforced() {
        let big = make_vblast(6).unwrap();
        let q = Constellation::new(4).unwrap();
        assert!(matches!(MlDecoder::new(&big, &q), Err(Error::MlBudgetExceeded { .. })));
    }

    #[test]
    fn ties_go_to_the_first_codeword() {
        let dec = MlDecoder::new(&make_vblast(1).unwrap(), &Constellation::new(2).unwrap()).unwrap();
        // zero channel: every codeword has the same metric
        let out = dec.decode(&ComplexMatrix::zeros(1, 1), &ComplexMatrix::zeros(1, 1), 10.0).unwrap();
        assert_eq!(out.s_hat, vec![0, 0]);
    }
}
