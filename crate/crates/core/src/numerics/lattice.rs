//! Lattice reduction and short-vector enumeration in double precision.
//!
//! Lattices are described by their Gram matrix `G`, so a coefficient row
//! vector `d` has squared length `d·G·dᵀ`. Enumeration factors `G = L·Lᵀ`,
//! LLL-reduces the rows of `L` and then walks the search tree of the reduced
//! basis in Schnorr–Euchner order, mapping every hit back to the original
//! coefficients.

use std::cmp::Ordering;

use crate::error::{Error, Result};

use super::cholesky::cholesky;
use super::matrix::{dot, IntMatrix, RealMatrix};

/// Lovász parameter used by [`lll_reduce`].
pub const LLL_DELTA: f64 = 0.99;

/// Node budget for one enumeration call.
pub const NODE_BUDGET: u64 = 10_000_000;

const SYMMETRY_TOL: f64 = 1e-10;
const PSD_TOL: f64 = 1e-10;

/// A lattice given by its (symmetric, positive semidefinite) Gram matrix.
#[derive(Debug, Clone)]
pub struct GramLattice {
    gram: RealMatrix,
}

impl GramLattice {
    pub fn new(gram: RealMatrix) -> Result<Self> {
        let n = gram.rows();
        if gram.cols() != n {
            return Err(Error::InvalidGram(format!("{}x{} is not square", n, gram.cols())));
        }
        if gram.as_slice().iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        let scale = gram.as_slice().iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for i in 0..n {
            for j in 0..i {
                if (gram[(i, j)] - gram[(j, i)]).abs() > SYMMETRY_TOL * scale {
                    return Err(Error::InvalidGram(format!("asymmetric at ({i}, {j})")));
                }
            }
        }
        // Every eigenvalue >= -tol·trace  <=>  G + tol·trace·I is PSD.
        let trace = gram.trace();
        if trace < 0.0 {
            return Err(Error::InvalidGram("negative trace".into()));
        }
        let mut shifted = gram.clone();
        let shift = PSD_TOL * trace.max(f64::MIN_POSITIVE);
        for i in 0..n {
            shifted[(i, i)] += shift;
        }
        if n > 0 && trace > 0.0 && semidefinite_cholesky(&shifted).is_none() {
            return Err(Error::InvalidGram("not positive semidefinite".into()));
        }
        Ok(Self { gram })
    }

    /// Gram matrix `B·Bᵀ` of the lattice spanned by the rows of `basis`.
    pub fn from_basis_rows(basis: &RealMatrix) -> Result<Self> {
        Self::new(basis.gram_rows())
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &RealMatrix {
        &self.gram
    }

    /// `d·G·dᵀ`
    pub fn norm2(&self, d: &[i64]) -> f64 {
        let n = self.dim();
        let mut acc = 0.0;
        for i in 0..n {
            if d[i] == 0 {
                continue;
            }
            let mut row = 0.0;
            for j in 0..n {
                row += self.gram[(i, j)] * d[j] as f64;
            }
            acc += d[i] as f64 * row;
        }
        acc
    }
}

// Cholesky that tolerates zero pivots; used only for the PSD test.
fn semidefinite_cholesky(m: &RealMatrix) -> Option<()> {
    let n = m.rows();
    let mut l = RealMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = m[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if d < 0.0 {
            return None;
        }
        let d = d.sqrt();
        l[(j, j)] = d;
        for i in j + 1..n {
            let mut v = m[(i, j)];
            for k in 0..j {
                v -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = if d > 0.0 { v / d } else { 0.0 };
        }
    }
    Some(())
}

/// Output of [`lll_reduce`]: `reduced = unimodular · basis`.
#[derive(Debug, Clone)]
pub struct LllReduction {
    pub reduced: RealMatrix,
    pub unimodular: IntMatrix,
}

struct GramSchmidt {
    mu: Vec<Vec<f64>>,
    norms: Vec<f64>,
}

fn gram_schmidt(b: &[Vec<f64>]) -> GramSchmidt {
    let n = b.len();
    let mut star: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut mu = vec![vec![0.0; n]; n];
    let mut norms = vec![0.0; n];
    for i in 0..n {
        let mut v = b[i].clone();
        for j in 0..i {
            mu[i][j] = if norms[j] > 0.0 { dot(&b[i], &star[j]) / norms[j] } else { 0.0 };
            for (x, s) in v.iter_mut().zip(&star[j]) {
                *x -= mu[i][j] * s;
            }
        }
        norms[i] = dot(&v, &v);
        star.push(v);
    }
    GramSchmidt { mu, norms }
}

/// LLL-reduces the rows of `basis` with `δ = 0.99`.
///
/// Rows must be linearly independent and no more numerous than columns.
pub fn lll_reduce(basis: &RealMatrix) -> Result<LllReduction> {
    let n = basis.rows();
    let m = basis.cols();
    if n > m {
        return Err(Error::RankDeficient);
    }
    let mut b: Vec<Vec<f64>> = (0..n).map(|i| basis.row(i).to_vec()).collect();
    let mut u = IntMatrix::identity(n);
    let mut gs = gram_schmidt(&b);

    let scale = b.iter().map(|r| dot(r, r)).fold(0.0, f64::max);
    if n > 0 && (scale == 0.0 || gs.norms.iter().any(|&v| v <= 1e-24 * scale)) {
        return Err(Error::RankDeficient);
    }

    let mut k = 1;
    let mut iterations = 0usize;
    while k < n {
        iterations += 1;
        if iterations > 1_000_000 {
            // Floating-point LLL can cycle only on wildly ill-conditioned input.
            return Err(Error::RankDeficient);
        }
        for j in (0..k).rev() {
            let q = gs.mu[k][j].round();
            if q != 0.0 {
                let qi = q as i64;
                let (lo, hi) = b.split_at_mut(k);
                for (x, y) in hi[0].iter_mut().zip(&lo[j]) {
                    *x -= q * y;
                }
                for c in 0..n {
                    let v = u[(j, c)];
                    u[(k, c)] -= qi * v;
                }
                for l in 0..j {
                    gs.mu[k][l] -= q * gs.mu[j][l];
                }
                gs.mu[k][j] -= q;
            }
        }
        let mu = gs.mu[k][k - 1];
        if gs.norms[k] >= (LLL_DELTA - mu * mu) * gs.norms[k - 1] {
            k += 1;
        } else {
            b.swap(k, k - 1);
            for c in 0..n {
                let t = u[(k, c)];
                u[(k, c)] = u[(k - 1, c)];
                u[(k - 1, c)] = t;
            }
            gs = gram_schmidt(&b);
            k = (k - 1).max(1);
        }
    }

    let reduced = RealMatrix::from_vec(n, m, b.into_iter().flatten().collect())?;
    Ok(LllReduction { reduced, unimodular: u })
}

/// One enumerated lattice vector in original coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct ShortVector {
    pub coeffs: Vec<i64>,
    pub norm2: f64,
}

/// Ascending by norm; exact ties ordered lexicographically descending so
/// that e.g. `(1,0)` precedes `(0,1)`.
pub fn compare_short(a: &ShortVector, b: &ShortVector) -> Ordering {
    a.norm2.total_cmp(&b.norm2).then_with(|| b.coeffs.cmp(&a.coeffs))
}

/// Flips the sign so the first nonzero coefficient is positive.
pub fn canonical_sign(d: &mut [i64]) {
    if let Some(&first) = d.iter().find(|&&v| v != 0) {
        if first < 0 {
            d.iter_mut().for_each(|v| *v = -*v);
        }
    }
}

fn is_canonical(d: &[i64]) -> bool {
    d.iter().find(|&&v| v != 0).is_some_and(|&v| v > 0)
}

/// Precomputed reduction of a positive-definite Gram lattice, reusable for
/// several enumeration radii.
#[derive(Debug, Clone)]
pub struct LatticeEnumerator {
    lattice: GramLattice,
    unimodular: IntMatrix,
    mu: Vec<Vec<f64>>,
    gs_norms: Vec<f64>,
    reduced_norms: Vec<f64>,
}

impl LatticeEnumerator {
    pub fn new(lattice: &GramLattice) -> Result<Self> {
        let l = cholesky(lattice.gram())?;
        let red = lll_reduce(&l)?;
        let rows: Vec<Vec<f64>> = (0..red.reduced.rows()).map(|i| red.reduced.row(i).to_vec()).collect();
        let gs = gram_schmidt(&rows);
        let reduced_norms = rows.iter().map(|r| dot(r, r)).collect();
        Ok(Self {
            lattice: lattice.clone(),
            unimodular: red.unimodular,
            mu: gs.mu,
            gs_norms: gs.norms,
            reduced_norms,
        })
    }

    pub fn lattice(&self) -> &GramLattice {
        &self.lattice
    }

    /// Squared lengths of the LLL-reduced basis vectors.
    pub fn reduced_norms(&self) -> &[f64] {
        &self.reduced_norms
    }

    /// Rows are the coefficient vectors (w.r.t. the original basis) of the
    /// reduced basis. Unimodular by construction.
    pub fn reduced_coefficients(&self) -> &IntMatrix {
        &self.unimodular
    }

    /// All nonzero `d` with `d·G·dᵀ ≤ radius2`, one per `±` pair, sorted by
    /// [`compare_short`] and truncated to `max_count`.
    pub fn enumerate(&self, radius2: f64, max_count: usize) -> Result<Vec<ShortVector>> {
        let n = self.lattice.dim();
        if n == 0 || !(radius2 > 0.0) {
            return Ok(Vec::new());
        }
        let bound = radius2 * (1.0 + 1e-10) + 1e-14 * self.lattice.gram().trace();
        let mut walk = Walk {
            mu: &self.mu,
            norms: &self.gs_norms,
            bound,
            coeffs: vec![0i64; n],
            nodes: 0,
            hits: Vec::new(),
        };
        walk.descend(n - 1, 0.0)?;

        let mut out: Vec<ShortVector> = walk
            .hits
            .into_iter()
            .filter_map(|c| {
                let d = self.to_original(&c);
                is_canonical(&d).then(|| {
                    let norm2 = self.lattice.norm2(&d);
                    ShortVector { coeffs: d, norm2 }
                })
            })
            .collect();
        out.sort_by(compare_short);
        out.truncate(max_count);
        Ok(out)
    }

    /// The `count` shortest vectors, growing the radius from the largest
    /// reduced basis norm until enough are found.
    pub fn shortest(&self, count: usize) -> Result<Vec<ShortVector>> {
        let mut radius = self.reduced_norms.iter().copied().fold(0.0, f64::max);
        loop {
            let found = self.enumerate(radius, usize::MAX)?;
            if found.len() >= count {
                return Ok(found.into_iter().take(count).collect());
            }
            radius *= 2.0;
        }
    }

    /// Squared minimum distance. The search radius is the first reduced
    /// basis vector's norm, which always contains a shortest vector.
    pub fn minimum(&self) -> Result<ShortVector> {
        let radius = self.reduced_norms.iter().copied().fold(f64::INFINITY, f64::min);
        let found = self.enumerate(radius, 1)?;
        found.into_iter().next().ok_or(Error::RankDeficient)
    }

    fn to_original(&self, c: &[i64]) -> Vec<i64> {
        let n = c.len();
        (0..n).map(|j| (0..n).map(|i| c[i] * self.unimodular[(i, j)]).sum()).collect()
    }
}

struct Walk<'a> {
    mu: &'a [Vec<f64>],
    norms: &'a [f64],
    bound: f64,
    coeffs: Vec<i64>,
    nodes: u64,
    hits: Vec<Vec<i64>>,
}

impl Walk<'_> {
    // Level `i` fixes coefficient i given coefficients i+1.. ; `partial` is
    // the squared length already committed by the higher levels.
    fn descend(&mut self, i: usize, partial: f64) -> Result<()> {
        let n = self.coeffs.len();
        let center = -(i + 1..n).map(|j| self.mu[j][i] * self.coeffs[j] as f64).sum::<f64>();
        let start = center.round() as i64;
        let dir = if center >= start as f64 { 1 } else { -1 };
        // Zig-zag: start, start+dir, start-dir, start+2dir, ... visits values
        // in nondecreasing distance from the centre, so the first miss ends
        // the level.
        for k in 0i64.. {
            self.nodes += 1;
            if self.nodes > NODE_BUDGET {
                return Err(Error::BudgetExceeded { nodes: NODE_BUDGET });
            }
            let offset = (k + 1) / 2;
            let x = if k % 2 == 1 { start + dir * offset } else { start - dir * offset };
            let diff = x as f64 - center;
            let total = partial + self.norms[i] * diff * diff;
            if total > self.bound {
                break;
            }
            self.coeffs[i] = x;
            if i == 0 {
                if self.coeffs.iter().any(|&v| v != 0) {
                    self.hits.push(self.coeffs.clone());
                }
            } else {
                self.descend(i - 1, total)?;
            }
        }
        self.coeffs[i] = 0;
        Ok(())
    }
}

/// All nonzero integer vectors of `lat` with `d·G·dᵀ ≤ radius2`, one per
/// sign pair (first nonzero coefficient positive), ascending in norm and
/// truncated to `max_count`.
pub fn enumerate_short_vectors(lat: &GramLattice, radius2: f64, max_count: usize) -> Result<Vec<ShortVector>> {
    LatticeEnumerator::new(lat)?.enumerate(radius2, max_count)
}

/// Greedily picks `count` linearly independent vectors from `candidates`
/// (already sorted ascending). Returns `None` if the candidates span fewer
/// dimensions.
pub fn greedy_independent(candidates: &[ShortVector], count: usize) -> Option<Vec<ShortVector>> {
    let mut picked: Vec<ShortVector> = Vec::with_capacity(count);
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(count);
    for cand in candidates {
        if picked.len() == count {
            break;
        }
        rows.push(cand.coeffs.clone());
        if integer_rank(&rows) == rows.len() {
            picked.push(cand.clone());
        } else {
            rows.pop();
        }
    }
    (picked.len() == count).then_some(picked)
}

/// Exact rank of an integer matrix given as rows.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            if m[r][c] == 0 {
                continue;
            }
            let (a, b) = (m[rank][c], m[r][c]);
            for k in 0..cols {
                m[r][k] = m[r][k] * a - m[rank][k] * b;
            }
            let g = m[r].iter().fold(0i128, |g, &v| gcd(g, v.abs()));
            if g > 1 {
                m[r].iter_mut().for_each(|v| *v /= g);
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
