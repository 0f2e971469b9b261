//! Numerical kernels shared by every other module: matrix types, the real
//! expansion of complex matrices, singular values, SPD solves, lattice
//! reduction and enumeration, and seeded Gaussian sampling.

mod cholesky;
mod gaussian;
mod lattice;
mod matrix;
mod svd;

pub use cholesky::{cholesky, spd_inverse, spd_solve};
pub use gaussian::{sample_gaussian_matrix, GaussianSampler};
pub use lattice::{
    canonical_sign, compare_short, enumerate_short_vectors, greedy_independent, integer_rank, lll_reduce, GramLattice,
    LatticeEnumerator, LllReduction, ShortVector, LLL_DELTA, NODE_BUDGET,
};
pub use matrix::{dot, ComplexMatrix, IntMatrix, RealMatrix};
pub use svd::{real_singular_values, singular_values, MAX_SWEEPS};

use crate::error::{Error, Result};

/// Real expansion `[[Re h, −Im h], [Im h, Re h]]` of an `nr × nt` complex
/// matrix.
///
/// ```
/// use ifstbc::numerics::{real_expand, ComplexMatrix, RealMatrix};
/// use num_complex::Complex64;
///
/// let h = ComplexMatrix::from_rows(&[[Complex64::new(0.0, 1.0)]]);
/// assert_eq!(real_expand(&h), RealMatrix::from_rows(&[[0.0, -1.0], [1.0, 0.0]]));
/// ```
pub fn real_expand(h: &ComplexMatrix) -> RealMatrix {
    let (r, c) = (h.rows(), h.cols());
    let mut out = RealMatrix::zeros(2 * r, 2 * c);
    for i in 0..r {
        for j in 0..c {
            let v = h[(i, j)];
            out[(i, j)] = v.re;
            out[(i, j + c)] = -v.im;
            out[(i + r, j)] = v.im;
            out[(i + r, j + c)] = v.re;
        }
    }
    out
}

/// `(H′ ⊗ I_T) · x` without forming the Kronecker product.
///
/// `x` is read as `H′.cols()` consecutive rows of length `t`; each output
/// row is the matching combination of those rows.
pub fn kron_identity_apply(hprime: &RealMatrix, t: usize, x: &[f64]) -> Result<Vec<f64>> {
    if x.len() != hprime.cols() * t {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for {} blocks of {t}",
            x.len(),
            hprime.cols()
        )));
    }
    let mut out = vec![0.0; hprime.rows() * t];
    for i in 0..hprime.rows() {
        let dst = &mut out[i * t..(i + 1) * t];
        for (j, &w) in hprime.row(i).iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            for (o, &v) in dst.iter_mut().zip(&x[j * t..(j + 1) * t]) {
                *o += w * v;
            }
        }
    }
    Ok(out)
}

/// `(H′ ⊗ I_T) · M` applied to every column of `m`.
pub fn kron_identity_matmul(hprime: &RealMatrix, t: usize, m: &RealMatrix) -> Result<RealMatrix> {
    let mut out = RealMatrix::zeros(hprime.rows() * t, m.cols());
    for c in 0..m.cols() {
        let col = kron_identity_apply(hprime, t, &m.column(c))?;
        for (i, v) in col.into_iter().enumerate() {
            out[(i, c)] = v;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn real_expand_examples() {
        let one = ComplexMatrix::from_rows(&[[Complex64::new(1.0, 0.0)]]);
        assert_eq!(real_expand(&one), RealMatrix::identity(2));
        let h = ComplexMatrix::from_rows(&[[Complex64::new(1.0, 2.0), Complex64::new(3.0, 0.0)]]);
        assert_eq!(
            real_expand(&h),
            RealMatrix::from_rows(&[[1.0, 3.0, -2.0, -0.0], [2.0, 0.0, 1.0, 3.0]])
        );
    }

    #[test]
    fn kron_examples() {
        let id = RealMatrix::identity(2);
        assert_eq!(kron_identity_apply(&id, 2, &[1.0, 2.0, 3.0, 4.0]).unwrap(), vec![1.0, 2.0, 3.0, 4.0]);
        let rot = RealMatrix::from_rows(&[[0.0, -1.0], [1.0, 0.0]]);
        assert_eq!(kron_identity_apply(&rot, 1, &[5.0, 7.0]).unwrap(), vec![-7.0, 5.0]);
        let up = RealMatrix::from_rows(&[[1.0, 1.0], [0.0, 1.0]]);
        // [[1,0,1,0],[0,1,0,1],[0,0,1,0],[0,0,0,1]] · [1,0,0,1]
        assert_eq!(kron_identity_apply(&up, 2, &[1.0, 0.0, 0.0, 1.0]).unwrap(), vec![1.0, 1.0, 0.0, 1.0]);
        assert!(kron_identity_apply(&up, 2, &[1.0; 3]).is_err());
    }
}
