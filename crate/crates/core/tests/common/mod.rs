//! Brute-force oracles shared by the integration tests. Each one solves its
//! problem by exhaustive search, independently of the library algorithm it
//! is compared with.

#![allow(dead_code)]

use ifstbc::numerics::{compare_short, spd_inverse, GaussianSampler, GramLattice, IntMatrix, RealMatrix, ShortVector};

/// `BᵀB` for a Gaussian `n × n` matrix `B`.
pub fn random_gram(sampler: &mut GaussianSampler, n: usize) -> GramLattice {
    let data = (0..n * n).map(|_| sampler.normal()).collect();
    let b = RealMatrix::from_vec(n, n, data).unwrap();
    GramLattice::new(b.gram_cols()).unwrap()
}

/// Every nonzero vector of `[−b, b]^n` whose first nonzero entry is
/// positive.
pub fn box_vectors(n: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut d = vec![-b; n];
    loop {
        if d.iter().find(|&&v| v != 0).is_some_and(|&v| v > 0) {
            out.push(d.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if d[i] < b {
                d[i] += 1;
                break;
            }
            d[i] = -b;
        }
    }
}

/// Largest `|d_i|` of any `d` with `d·G·dᵀ ≤ radius2`, from
/// `d_i² ≤ radius2 · (G⁻¹)_ii`.
pub fn coefficient_bound(lat: &GramLattice, radius2: f64) -> i64 {
    let inv = spd_inverse(lat.gram()).unwrap();
    (0..lat.dim()).map(|i| (radius2 * inv[(i, i)]).sqrt().floor() as i64).max().unwrap_or(0)
}

/// Canonical lattice vectors with squared norm at most `radius2`, found by
/// scanning a box guaranteed to contain them.
pub fn brute_force_short(lat: &GramLattice, radius2: f64) -> Vec<ShortVector> {
    let b = coefficient_bound(lat, radius2 * (1.0 + 1e-9));
    let mut out: Vec<ShortVector> = box_vectors(lat.dim(), b)
        .into_iter()
        .map(|d| ShortVector { norm2: lat.norm2(&d), coeffs: d })
        .filter(|v| v.norm2 <= radius2 * (1.0 + 1e-9))
        .collect();
    out.sort_by(compare_short);
    out
}

/// `min over A with rows in the box and odd det(A) of max_m a_m·G·a_mᵀ`,
/// by growing the candidate set in norm order and testing every subset
/// that contains the newest vector.
pub fn brute_force_odd_minimax(lat: &GramLattice, b: i64) -> Option<f64> {
    let n = lat.dim();
    let mut vs: Vec<ShortVector> =
        box_vectors(n, b).into_iter().map(|d| ShortVector { norm2: lat.norm2(&d), coeffs: d }).collect();
    vs.sort_by(compare_short);
    for k in n - 1..vs.len() {
        let mut idx: Vec<usize> = (0..n - 1).collect();
        loop {
            let mut rows: Vec<i64> = idx.iter().flat_map(|&i| vs[i].coeffs.clone()).collect();
            rows.extend_from_slice(&vs[k].coeffs);
            if IntMatrix::from_vec(n, n, rows).unwrap().determinant() % 2 != 0 {
                return Some(vs[k].norm2);
            }
            if !next_combination(&mut idx, k) {
                break;
            }
        }
    }
    None
}

/// Advances `idx` to the next increasing tuple drawn from `0..limit`.
fn next_combination(idx: &mut [usize], limit: usize) -> bool {
    let r = idx.len();
    if r == 0 {
        return false;
    }
    let mut i = r;
    while i > 0 {
        i -= 1;
        if idx[i] < limit - (r - i) {
            idx[i] += 1;
            for j in i + 1..r {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All `s ∈ Z_m^n` with `A·s ≡ r (mod m)`.
pub fn exhaustive_solutions(a: &IntMatrix, r: &[u32], m: u32) -> Vec<Vec<u32>> {
    let n = a.cols();
    let mut out = Vec::new();
    let mut s = vec![0u32; n];
    loop {
        let x: Vec<i64> = s.iter().map(|&v| v as i64).collect();
        if a.mul_vec(&x).iter().zip(r).all(|(v, &t)| v.rem_euclid(m as i64) == t as i64) {
            out.push(s.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            s[i] += 1;
            if s[i] < m {
                break;
            }
            s[i] = 0;
        }
    }
}

/// Integer matrix with entries in `[−b, b]` and odd determinant.
pub fn random_odd_matrix(sampler: &mut GaussianSampler, n: usize, b: u32) -> IntMatrix {
    loop {
        let data = (0..n * n).map(|_| sampler.uniform_below(2 * b + 1) as i64 - b as i64).collect();
        let a = IntMatrix::from_vec(n, n, data).unwrap();
        if a.determinant() % 2 != 0 {
            return a;
        }
    }
}
