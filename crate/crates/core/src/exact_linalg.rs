//! Exact linear algebra over Q and Z.
//!
//! Everything here is dense and arbitrary precision. Elimination picks the
//! first nonzero entry scanning column by column, then row by row, so the
//! output of every routine is a deterministic function of its input.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar, always stored reduced with a positive denominator.
pub type Rational = BigRational;

/// Dense row-major matrix over Q.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

/// Dense row-major matrix over Z.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

macro_rules! dense_common {
    ($ty:ident, $scalar:ty) => {
        impl $ty {
            pub fn new(rows: usize, cols: usize, entries: Vec<$scalar>) -> Result<Self> {
                if entries.len() != rows * cols {
                    return Err(Error::DimensionMismatch {
                        expected: rows * cols,
                        found: entries.len(),
                    });
                }
                Ok(Self { rows, cols, entries })
            }

            pub fn zeros(rows: usize, cols: usize) -> Self {
                Self { rows, cols, entries: vec![<$scalar>::zero(); rows * cols] }
            }

            pub fn identity(n: usize) -> Self {
                let mut m = Self::zeros(n, n);
                for i in 0..n {
                    m.entries[i * n + i] = <$scalar>::one();
                }
                m
            }

            /// Builds a matrix from small integer rows. Ragged input is rejected.
            pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
                let cols = rows.first().map_or(0, |r| r.as_ref().len());
                let mut entries = Vec::with_capacity(rows.len() * cols);
                for r in rows {
                    let r = r.as_ref();
                    if r.len() != cols {
                        return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
                    }
                    entries.extend(r.iter().map(|&x| <$scalar>::from(BigInt::from(x))));
                }
                Ok(Self { rows: rows.len(), cols, entries })
            }

            pub fn rows(&self) -> usize {
                self.rows
            }

            pub fn cols(&self) -> usize {
                self.cols
            }

            pub fn entries(&self) -> &[$scalar] {
                &self.entries
            }

            pub fn get(&self, r: usize, c: usize) -> &$scalar {
                &self.entries[r * self.cols + c]
            }

            pub fn set(&mut self, r: usize, c: usize, value: $scalar) {
                self.entries[r * self.cols + c] = value;
            }

            pub fn is_square(&self) -> bool {
                self.rows == self.cols
            }

            /// `m = -mᵀ`, which for square matrices forces a zero diagonal.
            pub fn is_skew_symmetric(&self) -> bool {
                self.is_square()
                    && (0..self.rows).all(|i| {
                        (i..self.cols).all(|j| *self.get(i, j) == -self.get(j, i).clone())
                    })
            }

            /// Principal submatrix on the given (0-based) indices, in the order given.
            pub fn principal_submatrix(&self, idx: &[usize]) -> Self {
                let mut entries = Vec::with_capacity(idx.len() * idx.len());
                for &i in idx {
                    for &j in idx {
                        entries.push(self.get(i, j).clone());
                    }
                }
                Self { rows: idx.len(), cols: idx.len(), entries }
            }

            pub fn transpose(&self) -> Self {
                let mut entries = Vec::with_capacity(self.entries.len());
                for c in 0..self.cols {
                    for r in 0..self.rows {
                        entries.push(self.get(r, c).clone());
                    }
                }
                Self { rows: self.cols, cols: self.rows, entries }
            }

            pub fn mul_vec(&self, v: &[$scalar]) -> Result<Vec<$scalar>> {
                if v.len() != self.cols {
                    return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
                }
                Ok((0..self.rows)
                    .map(|r| {
                        self.entries[r * self.cols..(r + 1) * self.cols]
                            .iter()
                            .zip(v)
                            .fold(<$scalar>::zero(), |acc, (a, b)| acc + a * b)
                    })
                    .collect())
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "[")?;
                for r in 0..self.rows {
                    if r > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "[")?;
                    for c in 0..self.cols {
                        if c > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{}", self.get(r, c))?;
                    }
                    write!(f, "]")?;
                }
                write!(f, "]")
            }
        }
    };
}

dense_common!(QMatrix, Rational);
dense_common!(ZMatrix, BigInt);

impl QMatrix {
    pub fn add(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(QMatrix { rows: self.rows, cols: self.cols, entries })
    }

    /// Reduced row echelon form together with its pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let cols = m.cols;
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..cols {
            if prow == m.rows {
                break;
            }
            let Some(r) = (prow..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            if r != prow {
                for k in 0..cols {
                    m.entries.swap(r * cols + k, prow * cols + k);
                }
            }
            let inv = m.get(prow, c).recip();
            for k in c..cols {
                let v = m.get(prow, k) * &inv;
                m.set(prow, k, v);
            }
            for r2 in 0..m.rows {
                if r2 == prow || m.get(r2, c).is_zero() {
                    continue;
                }
                let factor = m.get(r2, c).clone();
                for k in c..cols {
                    let v = m.get(r2, k) - &factor * m.get(prow, k);
                    m.set(r2, k, v);
                }
            }
            pivots.push(c);
            prow += 1;
        }
        (m, pivots)
    }
}

impl ZMatrix {
    pub fn to_q(&self) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().cloned().map(Rational::from_integer).collect(),
        }
    }
}

/// Rank over Q.
pub fn rank_q(m: &QMatrix) -> usize {
    // Forward elimination only; the back-substitution of `rref` is not needed.
    let mut a = m.clone();
    let cols = a.cols;
    let mut prow = 0;
    for c in 0..cols {
        if prow == a.rows {
            break;
        }
        let Some(r) = (prow..a.rows).find(|&r| !a.get(r, c).is_zero()) else {
            continue;
        };
        if r != prow {
            for k in 0..cols {
                a.entries.swap(r * cols + k, prow * cols + k);
            }
        }
        let pivot = a.get(prow, c).clone();
        for r2 in prow + 1..a.rows {
            if a.get(r2, c).is_zero() {
                continue;
            }
            let factor = a.get(r2, c) / &pivot;
            for k in c..cols {
                let v = a.get(r2, k) - &factor * a.get(prow, k);
                a.set(r2, k, v);
            }
        }
        prow += 1;
    }
    prow
}

pub fn kernel_dim_q(m: &QMatrix) -> usize {
    m.cols() - rank_q(m)
}

/// A basis of the right kernel over Q, one vector per free column of the
/// reduced row echelon form.
pub fn kernel_basis_q(m: &QMatrix) -> Vec<Vec<Rational>> {
    let (r, pivots) = m.rref();
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); m.cols()];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, f).clone();
            }
            v
        })
        .collect()
}

/// Returns `(g, x, y)` with `g = gcd(a, b) >= 0` and `x·a + y·b = g`.
fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// A Z-basis of the integer kernel `{s ∈ Zⁿ : m·s = 0}`.
///
/// Column-style Hermite reduction of `m` with a tracked unimodular transform
/// `U` (so `m·U` is in column echelon form); the columns of `U` matching the
/// zero columns of `m·U` generate the whole kernel lattice. The result is
/// then put in row Hermite normal form, which makes it canonical: two
/// matrices with the same integer kernel get the same basis.
pub fn integer_kernel_basis(m: &ZMatrix) -> Vec<Vec<BigInt>> {
    let n = m.cols();
    let mut h = m.clone();
    let mut u = ZMatrix::identity(n);
    let mut p = 0;
    for r in 0..m.rows() {
        if p == n {
            break;
        }
        for j in p + 1..n {
            if h.get(r, j).is_zero() {
                continue;
            }
            let a = h.get(r, p).clone();
            let b = h.get(r, j).clone();
            let (g, x, y) = extended_gcd(&a, &b);
            let (ag, bg) = (&a / &g, &b / &g);
            // [col_p, col_j] <- [x·col_p + y·col_j, -(b/g)·col_p + (a/g)·col_j]
            for mat in [&mut h, &mut u] {
                for i in 0..mat.rows() {
                    let cp = mat.get(i, p).clone();
                    let cj = mat.get(i, j).clone();
                    mat.set(i, p, &x * &cp + &y * &cj);
                    mat.set(i, j, &ag * &cj - &bg * &cp);
                }
            }
        }
        if h.get(r, p).is_zero() {
            continue;
        }
        p += 1;
    }
    let basis: Vec<Vec<BigInt>> =
        (p..n).map(|c| (0..n).map(|i| u.get(i, c).clone()).collect()).collect();
    hermite_rows(basis)
}

/// Row-style Hermite normal form of a list of linearly independent integer
/// vectors: same lattice, positive pivots, entries above each pivot reduced
/// into `[0, pivot)`.
#[allow(clippy::needless_range_loop)]
pub fn hermite_rows(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let Some(n) = rows.first().map(Vec::len) else {
        return rows;
    };
    let mut prow = 0;
    for c in 0..n {
        if prow == rows.len() {
            break;
        }
        for r in prow + 1..rows.len() {
            if rows[r][c].is_zero() {
                continue;
            }
            let a = rows[prow][c].clone();
            let b = rows[r][c].clone();
            let (g, x, y) = extended_gcd(&a, &b);
            let (ag, bg) = (&a / &g, &b / &g);
            for k in 0..n {
                let rp = rows[prow][k].clone();
                let rr = rows[r][k].clone();
                rows[prow][k] = &x * &rp + &y * &rr;
                rows[r][k] = &ag * &rr - &bg * &rp;
            }
        }
        if rows[prow][c].is_zero() {
            continue;
        }
        if rows[prow][c].is_negative() {
            for v in rows[prow].iter_mut() {
                *v = -v.clone();
            }
        }
        let pivot = rows[prow][c].clone();
        for r in 0..prow {
            let q = rows[r][c].div_floor(&pivot);
            if q.is_zero() {
                continue;
            }
            for k in 0..n {
                let v = &rows[r][k] - &q * &rows[prow][k];
                rows[r][k] = v;
            }
        }
        prow += 1;
    }
    rows.truncate(prow);
    rows
}
