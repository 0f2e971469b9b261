//! One-sided (Hestenes) Jacobi singular values.

use crate::error::{Error, Result};

use super::matrix::{ComplexMatrix, RealMatrix};
use super::real_expand;

pub const MAX_SWEEPS: usize = 100;
const ROTATION_TOL: f64 = 1e-12;

/// Singular values of a real matrix, descending. Returns `min(rows, cols)`
/// values.
pub fn real_singular_values(m: &RealMatrix) -> Result<Vec<f64>> {
    // Orthogonalise the shorter dimension: columns of `work` are the vectors
    // being rotated, stored here as rows for contiguous access.
    let work = if m.cols() <= m.rows() { m.transpose() } else { m.clone() };
    let n = work.rows();
    let len = work.cols();
    let mut vecs: Vec<Vec<f64>> = (0..n).map(|i| work.row(i).to_vec()).collect();

    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (alpha, beta, gamma) = {
                    let (vp, vq) = (&vecs[p], &vecs[q]);
                    let mut a = 0.0;
                    let mut b = 0.0;
                    let mut g = 0.0;
                    for k in 0..len {
                        a += vp[k] * vp[k];
                        b += vq[k] * vq[k];
                        g += vp[k] * vq[k];
                    }
                    (a, b, g)
                };
                if gamma == 0.0 || gamma.abs() <= ROTATION_TOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (lo, hi) = vecs.split_at_mut(q);
                let (vp, vq) = (&mut lo[p], &mut hi[0]);
                for k in 0..len {
                    let x = vp[k];
                    let y = vq[k];
                    vp[k] = c * x - s * y;
                    vq[k] = s * x + c * y;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence { sweeps: MAX_SWEEPS });
    }

    let mut sv: Vec<f64> = vecs.iter().map(|v| v.iter().map(|x| x * x).sum::<f64>().sqrt()).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

/// Singular values `σ_1 ≥ … ≥ σ_nt ≥ 0` of an `nt × T` complex matrix.
///
/// Computed on the real expansion, whose spectrum repeats every singular
/// value twice. When `T < nt` the trailing values are exactly zero.
pub fn singular_values(x: &ComplexMatrix) -> Result<Vec<f64>> {
    let expanded = real_singular_values(&real_expand(x))?;
    let mut sv: Vec<f64> = expanded.iter().step_by(2).copied().collect();
    sv.resize(x.rows(), 0.0);
    Ok(sv)
}
