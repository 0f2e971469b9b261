//! Linear algebra over `Z_{2^k}`.
//!
//! A square integer matrix is invertible modulo a power of two exactly when
//! its determinant is odd. Odd scalars are inverted as `v^{2^{k-1} − 1}`
//! (the unit group of `Z_{2^k}` has order `2^{k-1}`).

use crate::error::{Error, Result};
use crate::numerics::IntMatrix;

fn check_modulus(modulus: u32) -> Result<i128> {
    if modulus < 2 || !modulus.is_power_of_two() {
        return Err(Error::InvalidConstellation(modulus));
    }
    Ok(modulus as i128)
}

fn pow_mod(mut base: i128, mut exp: u64, m: i128) -> i128 {
    base = base.rem_euclid(m);
    let mut acc = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Inverse of an odd integer modulo `modulus = 2^k`.
pub fn inverse_odd_mod(value: i128, modulus: u32) -> Result<i128> {
    let m = check_modulus(modulus)?;
    if value.rem_euclid(2) == 0 {
        return Err(Error::NotInvertibleModM { modulus });
    }
    Ok(pow_mod(value, (modulus / 2) as u64 - 1, m))
}

/// `B` with `A·B ≡ I (mod modulus)`, entries in `0..modulus`.
///
/// Gauss–Jordan elimination over the ring: a pivot is usable exactly when it
/// is odd, and some remaining row has an odd entry in every column as long
/// as the determinant is odd.
pub fn invert_mod_2k(a: &IntMatrix, modulus: u32) -> Result<IntMatrix> {
    let m = check_modulus(modulus)? as i64;
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::DimensionMismatch(format!("{}x{} is not square", n, a.cols())));
    }
    let mut left: Vec<Vec<i64>> = (0..n).map(|i| a.row(i).iter().map(|v| v.rem_euclid(m)).collect()).collect();
    let mut right: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j) % m).collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&r| left[r][c] % 2 == 1).ok_or(Error::NotInvertibleModM { modulus })?;
        left.swap(c, p);
        right.swap(c, p);
        let inv = inverse_odd_mod(left[c][c] as i128, modulus)? as i64;
        for j in 0..n {
            left[c][j] = left[c][j] * inv % m;
            right[c][j] = right[c][j] * inv % m;
        }
        for r in (0..n).filter(|&r| r != c) {
            let f = left[r][c];
            if f == 0 {
                continue;
            }
            for j in 0..n {
                left[r][j] = (left[r][j] - f * left[c][j]).rem_euclid(m);
                right[r][j] = (right[r][j] - f * right[c][j]).rem_euclid(m);
            }
        }
    }
    IntMatrix::from_vec(n, n, right.into_iter().flatten().collect())
}

/// `A·x mod modulus` for ring elements.
pub fn mul_mod(a: &IntMatrix, x: &[i64], modulus: u32) -> Vec<u32> {
    let m = modulus as i64;
    a.mul_vec(x).into_iter().map(|v| v.rem_euclid(m) as u32).collect()
}
