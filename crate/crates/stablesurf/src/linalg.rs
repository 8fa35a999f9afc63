//! Exact linear algebra over the rationals: symmetric matrices,
//! fraction-free solving, determinants, and definiteness tests.
//!
//! Elimination is Bareiss-style (fraction-free over the integers after
//! clearing row denominators) so intermediate entries stay bounded and
//! every division is exact.

use crate::rat::Rat;
use num::bigint::BigInt;
use num::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("right-hand side has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("entries are not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("rows do not form a square matrix")]
    NotSquare,
    #[error("branch weight string is empty")]
    EmptyBranch,
}

/// A dense symmetric matrix with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymMatrix {
    n: usize,
    entries: Vec<Rat>,
}

impl SymMatrix {
    /// Builds from full rows, checking squareness and symmetry.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, LinAlgError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(LinAlgError::NotSquare);
        }
        let m = SymMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        };
        for i in 0..n {
            for j in (i + 1)..n {
                if m.get(i, j) != m.get(j, i) {
                    return Err(LinAlgError::NotSymmetric(i, j));
                }
            }
        }
        Ok(m)
    }

    /// Builds from integer rows; panics on shape errors (test/builder aid).
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| crate::rat::int(v)).collect())
            .collect();
        Self::from_rows(rows).expect("integer rows must form a symmetric square matrix")
    }

    /// Builds by evaluating `f(i, j)` for `i <= j` and mirroring.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = SymMatrix {
            n,
            entries: vec![Rat::zero(); n * n],
        };
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                m.entries[i * n + j] = v.clone();
                m.entries[j * n + i] = v;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.n + j]
    }

    /// The leading principal `k x k` submatrix.
    pub fn leading(&self, k: usize) -> SymMatrix {
        SymMatrix::from_fn(k, |i, j| self.get(i, j).clone())
    }

    /// `M . v` as exact rationals.
    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    /// Clears denominators row by row, returning an integer matrix whose
    /// rows are positive multiples of the originals (extra columns allowed).
    fn cleared_rows(rows: &[Vec<Rat>]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|row| {
                let mut d = BigInt::one();
                for e in row {
                    d = num::integer::lcm(d, e.denom().clone());
                }
                row.iter().map(|e| e.numer() * (&d / e.denom())).collect()
            })
            .collect()
    }
}

/// Fraction-free forward elimination on an integer matrix, with optional
/// partial pivoting.
///
/// Returns the swap sign (`+1`/`-1`) on success. Without pivoting, stops and
/// reports the column where a zero pivot appears. After step `k` the entry
/// `a[k][k]` equals the `(k+1)`-st leading principal minor of the (swapped)
/// matrix.
fn bareiss(a: &mut [Vec<BigInt>], ncols: usize, pivot: bool) -> Result<i32, usize> {
    let n = a.len();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            if !pivot {
                return Err(k);
            }
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Err(k),
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..ncols {
                let t = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    Ok(sign)
}

/// Solves `M . x = b` exactly. Fails with `SingularMatrix` when `det M = 0`.
pub fn solve(m: &SymMatrix, b: &[Rat]) -> Result<Vec<Rat>, LinAlgError> {
    let n = m.dim();
    if b.len() != n {
        return Err(LinAlgError::DimensionMismatch {
            expected: n,
            got: b.len(),
        });
    }
    if n == 0 {
        return Ok(vec![]);
    }
    let rows: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = (0..n).map(|j| m.get(i, j).clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut a = SymMatrix::cleared_rows(&rows);
    bareiss(&mut a, n + 1, true).map_err(|_| LinAlgError::SingularMatrix)?;
    let mut x = vec![Rat::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rat::from_integer(a[i][n].clone());
        for j in (i + 1)..n {
            acc -= Rat::from_integer(a[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rat::from_integer(a[i][i].clone());
    }
    Ok(x)
}

/// Exact determinant. The empty matrix has determinant 1.
pub fn determinant(m: &SymMatrix) -> Rat {
    let n = m.dim();
    if n == 0 {
        return Rat::one();
    }
    let rows: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).clone()).collect())
        .collect();
    // det(D M) = det(D) det(M) with D the positive row-clearing diagonal.
    let mut scale = Rat::one();
    for row in &rows {
        let mut d = BigInt::one();
        for e in row {
            d = num::integer::lcm(d, e.denom().clone());
        }
        scale *= Rat::from_integer(d);
    }
    let mut a = SymMatrix::cleared_rows(&rows);
    match bareiss(&mut a, n, true) {
        Ok(sign) => {
            let det = Rat::from_integer(a[n - 1][n - 1].clone()) / scale;
            if sign < 0 {
                -det
            } else {
                det
            }
        }
        Err(_) => Rat::zero(),
    }
}

/// Sylvester test: true iff `(-1)^k det(leading k x k) > 0` for `k = 1..=n`.
///
/// Runs Bareiss without row swaps so the pivots are exactly the leading
/// principal minors (up to positive row scaling); a zero pivot means some
/// leading minor vanishes, which already rules out definiteness.
pub fn is_negative_definite(m: &SymMatrix) -> bool {
    let n = m.dim();
    if n == 0 {
        return true;
    }
    let rows: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut a = SymMatrix::cleared_rows(&rows);
    // Check signs as the pivots appear; bail out early on a violation.
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            return false;
        }
        let want_positive = (k + 1) % 2 == 0;
        if a[k][k].is_positive() != want_positive {
            return false;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let t = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    true
}

/// Determinant of the tridiagonal matrix with diagonal `c_1..c_n` and
/// off-diagonal -1: the continuant of a branch string, equal to the
/// determinant of the negated intersection matrix of the branch.
pub fn branch_determinant(weights: &[u64]) -> Result<BigInt, LinAlgError> {
    if weights.is_empty() {
        return Err(LinAlgError::EmptyBranch);
    }
    let mut prev = BigInt::one();
    let mut cur = BigInt::from(weights[0]);
    for &c in &weights[1..] {
        let next = BigInt::from(c) * &cur - &prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}
