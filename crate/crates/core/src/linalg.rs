//! Exact rational scalars, vectors, and symmetric matrix algebra.
//!
//! Every operation in this crate is exact: scalars are arbitrary-precision
//! rationals kept in lowest terms with a positive denominator, and nothing
//! here ever rounds. The text format for a scalar is `p/q`, with `/q`
//! omitted when the denominator is 1 (`"3"`, `"-3/2"`).

use crate::error::{Error, Result};
use num::{BigRational, Signed, Zero};
use std::fmt;
use std::ops::Index;
use std::str::FromStr;

/// Arbitrary-precision rational scalar, always in lowest terms.
pub type Rational = BigRational;

/// Shorthand for small rational constants, mostly in tests.
///
/// Panics on a zero denominator.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}

/// A small integer as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Parse `p/q` or `p` (surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|_| Error::Parse(format!("bad rational {s:?}")))
}

/// Parse a comma-separated list of rationals.
pub fn parse_vector(s: &str) -> Result<RatVector> {
    let trimmed = s.trim();
    if trimmed.is_empty() {
        return Ok(RatVector::new(Vec::new()));
    }
    let entries = trimmed
        .split(',')
        .map(parse_rational)
        .collect::<Result<Vec<_>>>()?;
    Ok(RatVector::new(entries))
}

/// Fixed-length vector of rationals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatVector {
    entries: Vec<Rational>,
}

impl RatVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        Self { entries }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            entries: vec![Rational::zero(); n],
        }
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        Self::new(entries.iter().map(|&n| rat_int(n)).collect())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.entries.iter()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// True iff every entry is `>= 0`.
    pub fn is_nonneg(&self) -> bool {
        self.entries.iter().all(|e| !e.is_negative())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        Self::new(
            self.iter()
                .zip(other.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        Self::new(
            self.iter()
                .zip(other.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, t: &Rational) -> Self {
        Self::new(self.iter().map(|a| a * t).collect())
    }

    /// Entrywise minimum.
    pub fn min_entrywise(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        Self::new(
            self.iter()
                .zip(other.iter())
                .map(|(a, b)| if a <= b { a.clone() } else { b.clone() })
                .collect(),
        )
    }

    /// Plain dot product of the coordinate lists (no Gram matrix involved).
    pub fn dot(&self, other: &Self) -> Rational {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        self.iter()
            .zip(other.iter())
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }
}

impl Index<usize> for RatVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.entries[i]
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Row-major rectangular matrix of rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, rat_int(1));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&n| rat_int(n)).collect())
                .collect(),
        )
        .expect("literal rows are rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> RatVector {
        RatVector::new((0..self.rows).map(|i| self.at(i, j).clone()).collect())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self.at(i, j) != self.at(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul_vec(&self, v: &RatVector) -> RatVector {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        RatVector::new(
            (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(v.iter())
                        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix-matrix dimension mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(Rational::zero(), |acc, k| acc + self.at(i, k) * other.at(k, j))
        })
    }

    /// Submatrix picking the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self.at(rows[i], cols[j]).clone()
        })
    }

    pub fn scale(&self, t: &Rational) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j) * t)
    }
}

/// Exact determinant of a square matrix, by Gaussian elimination with row
/// swaps.
pub fn determinant(m: &RatMatrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "determinant of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut det = rat_int(1);
    for k in 0..n {
        let pivot_row = match (k..n).find(|&r| !a.at(r, k).is_zero()) {
            Some(r) => r,
            None => return Ok(Rational::zero()),
        };
        if pivot_row != k {
            for j in 0..n {
                let tmp = a.at(k, j).clone();
                a.set(k, j, a.at(pivot_row, j).clone());
                a.set(pivot_row, j, tmp);
            }
            det = -det;
        }
        let pivot = a.at(k, k).clone();
        det *= &pivot;
        for r in (k + 1)..n {
            if a.at(r, k).is_zero() {
                continue;
            }
            let factor = a.at(r, k) / &pivot;
            for j in k..n {
                let v = a.at(r, j) - &factor * a.at(k, j);
                a.set(r, j, v);
            }
        }
    }
    Ok(det)
}

/// Solve `M x = b` exactly for any nonsingular square `M`.
///
/// Plain Gaussian elimination with row swaps; over the rationals any
/// nonzero pivot is exact, so no magnitude-based pivoting is needed.
pub fn solve(m: &RatMatrix, b: &RatVector) -> Result<RatVector> {
    if !m.is_square() || m.rows() != b.len() {
        return Err(Error::Dimension(format!(
            "solve: {}x{} matrix with length-{} rhs",
            m.rows(),
            m.cols(),
            b.len()
        )));
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut x: Vec<Rational> = b.iter().cloned().collect();
    // Forward elimination with first-nonzero pivoting.
    for k in 0..n {
        let pivot_row = (k..n)
            .find(|&r| !a.at(r, k).is_zero())
            .ok_or(Error::Singular)?;
        if pivot_row != k {
            for j in 0..n {
                let tmp = a.at(k, j).clone();
                a.set(k, j, a.at(pivot_row, j).clone());
                a.set(pivot_row, j, tmp);
            }
            x.swap(k, pivot_row);
        }
        let pivot = a.at(k, k).clone();
        for r in (k + 1)..n {
            if a.at(r, k).is_zero() {
                continue;
            }
            let factor = a.at(r, k) / &pivot;
            for j in k..n {
                let v = a.at(r, j) - &factor * a.at(k, j);
                a.set(r, j, v);
            }
            let v = &x[r] - &factor * &x[k];
            x[r] = v;
        }
    }
    // Back substitution.
    for k in (0..n).rev() {
        let mut acc = x[k].clone();
        for (j, xj) in x.iter().enumerate().skip(k + 1) {
            acc -= a.at(k, j) * xj;
        }
        x[k] = acc / a.at(k, k);
    }
    Ok(RatVector::new(x))
}

/// Exact inverse of any nonsingular square matrix, by solving against the
/// standard basis columns.
pub fn invert_general(m: &RatMatrix) -> Result<RatMatrix> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "inverse of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let mut inv = RatMatrix::zeros(n, n);
    for j in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[j] = rat_int(1);
        let col = solve(m, &RatVector::new(e))?;
        for i in 0..n {
            inv.set(i, j, col[i].clone());
        }
    }
    Ok(inv)
}

/// Exact inverse of a symmetric nonsingular matrix, by Gauss-Jordan
/// elimination. `M * invert_symmetric(M) = I` holds exactly.
pub fn invert_symmetric(m: &RatMatrix) -> Result<RatMatrix> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "inverse of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut inv = RatMatrix::identity(n);
    for k in 0..n {
        let pivot_row = (k..n)
            .find(|&r| !a.at(r, k).is_zero())
            .ok_or(Error::Singular)?;
        if pivot_row != k {
            for j in 0..n {
                let tmp = a.at(k, j).clone();
                a.set(k, j, a.at(pivot_row, j).clone());
                a.set(pivot_row, j, tmp);
                let tmp = inv.at(k, j).clone();
                inv.set(k, j, inv.at(pivot_row, j).clone());
                inv.set(pivot_row, j, tmp);
            }
        }
        let pivot = a.at(k, k).clone();
        for j in 0..n {
            let v = a.at(k, j) / &pivot;
            a.set(k, j, v);
            let v = inv.at(k, j) / &pivot;
            inv.set(k, j, v);
        }
        for r in 0..n {
            if r == k || a.at(r, k).is_zero() {
                continue;
            }
            let factor = a.at(r, k).clone();
            for j in 0..n {
                let v = a.at(r, j) - &factor * a.at(k, j);
                a.set(r, j, v);
                let v = inv.at(r, j) - &factor * inv.at(k, j);
                inv.set(r, j, v);
            }
        }
    }
    Ok(inv)
}

/// Exact positive-definiteness test for a symmetric matrix: all leading
/// principal minors strictly positive.
///
/// In pivot-free elimination the k-th leading minor is the product of the
/// first k pivots, so the test reduces to checking pivot signs; a zero
/// pivot means some leading minor vanishes, which already rules out
/// definiteness.
pub fn is_positive_definite(m: &RatMatrix) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "definiteness of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = m.rows();
    let mut a = m.clone();
    for k in 0..n {
        let pivot = a.at(k, k).clone();
        if !pivot.is_positive() {
            return Ok(false);
        }
        for r in (k + 1)..n {
            if a.at(r, k).is_zero() {
                continue;
            }
            let factor = a.at(r, k) / &pivot;
            for j in k..n {
                let v = a.at(r, j) - &factor * a.at(k, j);
                a.set(r, j, v);
            }
        }
    }
    Ok(true)
}
