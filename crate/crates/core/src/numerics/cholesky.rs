use crate::error::{Error, Result};

use super::matrix::RealMatrix;

/// Lower-triangular `L` with `m = L·Lᵀ`.
///
/// Pivots at or below `1e-14 · max diag` are rejected, so numerically
/// singular matrices fail rather than producing a huge inverse.
pub fn cholesky(m: &RealMatrix) -> Result<RealMatrix> {
    let n = m.rows();
    if m.cols() != n {
        return Err(Error::DimensionMismatch(format!("Cholesky of a {}x{} matrix", n, m.cols())));
    }
    let max_diag = (0..n).map(|i| m[(i, i)].abs()).fold(0.0, f64::max);
    let floor = 1e-14 * max_diag;
    let mut l = RealMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = m[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if !(d > floor) {
            return Err(Error::NotPositiveDefinite);
        }
        let d = d.sqrt();
        l[(j, j)] = d;
        for i in j + 1..n {
            let mut v = m[(i, j)];
            for k in 0..j {
                v -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = v / d;
        }
    }
    Ok(l)
}

/// Solves `m · X = rhs` for symmetric positive-definite `m`.
pub fn spd_solve(m: &RealMatrix, rhs: &RealMatrix) -> Result<RealMatrix> {
    if rhs.rows() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has {} rows, system has {}",
            rhs.rows(),
            m.rows()
        )));
    }
    let l = cholesky(m)?;
    let n = m.rows();
    let mut x = rhs.clone();
    for col in 0..rhs.cols() {
        // forward: L z = b
        for i in 0..n {
            let mut v = x[(i, col)];
            for k in 0..i {
                v -= l[(i, k)] * x[(k, col)];
            }
            x[(i, col)] = v / l[(i, i)];
        }
        // backward: Lᵀ x = z
        for i in (0..n).rev() {
            let mut v = x[(i, col)];
            for k in i + 1..n {
                v -= l[(k, i)] * x[(k, col)];
            }
            x[(i, col)] = v / l[(i, i)];
        }
    }
    Ok(x)
}

/// Inverse of a symmetric positive-definite matrix.
pub fn spd_inverse(m: &RealMatrix) -> Result<RealMatrix> {
    spd_solve(m, &RealMatrix::identity(m.rows()))
}
