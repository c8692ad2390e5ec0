//! Exact integer matrix arithmetic.
//!
//! Everything here runs over a ring of exact integers. The fast path uses
//! `i128` with checked operations; callers retry with [`BigInt`] when any
//! step reports [`Overflow`]. No operation ever rounds or wraps.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An arithmetic step left the representable range of the chosen integer type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("integer overflow in exact arithmetic")]
pub struct Overflow;

/// Exact integers with fallible ring operations.
pub trait ExactInt: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn checked_add(&self, rhs: &Self) -> Result<Self, Overflow>;
    fn checked_sub(&self, rhs: &Self) -> Result<Self, Overflow>;
    fn checked_mul(&self, rhs: &Self) -> Result<Self, Overflow>;
    fn checked_neg(&self) -> Result<Self, Overflow>;
    /// Division known to be exact (Bareiss steps, gcd reduction).
    fn div_exact(&self, rhs: &Self) -> Self;
    /// Non-negative greatest common divisor.
    fn gcd(&self, rhs: &Self) -> Self;
    fn to_i64(&self) -> Option<i64>;
    fn to_bigint(&self) -> BigInt;
}

impl ExactInt for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn checked_add(&self, rhs: &Self) -> Result<Self, Overflow> {
        i128::checked_add(*self, *rhs).ok_or(Overflow)
    }
    fn checked_sub(&self, rhs: &Self) -> Result<Self, Overflow> {
        i128::checked_sub(*self, *rhs).ok_or(Overflow)
    }
    fn checked_mul(&self, rhs: &Self) -> Result<Self, Overflow> {
        i128::checked_mul(*self, *rhs).ok_or(Overflow)
    }
    fn checked_neg(&self) -> Result<Self, Overflow> {
        i128::checked_neg(*self).ok_or(Overflow)
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self % rhs, 0, "inexact division {self} / {rhs}");
        self / rhs
    }
    fn gcd(&self, rhs: &Self) -> Self {
        Integer::gcd(self, rhs)
    }
    fn to_i64(&self) -> Option<i64> {
        i64::try_from(*self).ok()
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ExactInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn checked_add(&self, rhs: &Self) -> Result<Self, Overflow> {
        Ok(self + rhs)
    }
    fn checked_sub(&self, rhs: &Self) -> Result<Self, Overflow> {
        Ok(self - rhs)
    }
    fn checked_mul(&self, rhs: &Self) -> Result<Self, Overflow> {
        Ok(self * rhs)
    }
    fn checked_neg(&self) -> Result<Self, Overflow> {
        Ok(-self)
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % rhs)), "inexact division {self} / {rhs}");
        self / rhs
    }
    fn gcd(&self, rhs: &Self) -> Self {
        Integer::gcd(self, rhs)
    }
    fn to_i64(&self) -> Option<i64> {
        ToPrimitive::to_i64(self)
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.cols.max(1))).finish()
    }
}

impl<T: Clone> Matrix<T> {
    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    /// Builds a matrix from nested rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged matrix rows");
            data.extend_from_slice(r.as_ref());
        }
        Matrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn is_symmetric(&self) -> bool
    where
        T: PartialEq,
    {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Principal submatrix on the given (ordered) index set.
    pub fn principal(&self, keep: &[usize]) -> Self {
        let mut data = Vec::with_capacity(keep.len() * keep.len());
        for &i in keep {
            for &j in keep {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix { rows: keep.len(), cols: keep.len(), data }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: ExactInt> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::filled(n, n, T::zero());
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_i64(m: &Matrix<i64>) -> Self {
        m.map(|&v| T::from_i64(v))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, Overflow> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = Matrix::filled(self.rows, rhs.cols, T::zero());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a.checked_mul(&rhs[(k, j)])?;
                    out[(i, j)] = out[(i, j)].checked_add(&prod)?;
                }
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, k: &T) -> Result<Self, Overflow> {
        let data = self.data.iter().map(|v| v.checked_mul(k)).collect::<Result<_, _>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant<T: ExactInt>(m: &Matrix<T>) -> Result<T, Overflow> {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return Ok(T::one());
    }
    let mut a = m.clone();
    let mut prev = T::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                Some(r) => {
                    swap_rows(&mut a, k, r);
                    negate = !negate;
                }
                None => return Ok(T::zero()),
            }
        }
        let pivot = a[(k, k)].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let lhs = pivot.checked_mul(&a[(i, j)])?;
                let rhs = a[(i, k)].checked_mul(&a[(k, j)])?;
                a[(i, j)] = lhs.checked_sub(&rhs)?.div_exact(&prev);
            }
            a[(i, k)] = T::zero();
        }
        prev = pivot;
    }
    let det = a[(n - 1, n - 1)].clone();
    if negate {
        det.checked_neg()
    } else {
        Ok(det)
    }
}

/// Result of fraction-free Gauss-Jordan inversion: `adjugate = det * m^-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Adjugate<T> {
    pub det: T,
    pub adjugate: Matrix<T>,
}

/// Computes `det(m)` and the integer matrix `det(m) * m^-1` together.
///
/// Runs Bareiss-style Gauss-Jordan on `[m | I]`; every intermediate entry is a
/// minor of the augmented matrix, so all divisions are exact. Returns `None`
/// inside the `Ok` when `m` is singular.
pub fn adjugate<T: ExactInt>(m: &Matrix<T>) -> Result<Option<Adjugate<T>>, Overflow> {
    assert_eq!(m.rows, m.cols, "adjugate of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return Ok(Some(Adjugate { det: T::one(), adjugate: Matrix::identity(0) }));
    }
    let w = 2 * n;
    let mut a = Matrix::filled(n, w, T::zero());
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = m[(i, j)].clone();
        }
        a[(i, n + i)] = T::one();
    }
    let mut prev = T::one();
    let mut negate = false;
    for k in 0..n {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                Some(r) => {
                    swap_rows(&mut a, k, r);
                    negate = !negate;
                }
                None => return Ok(None),
            }
        }
        let pivot = a[(k, k)].clone();
        for i in (0..n).filter(|&i| i != k) {
            let factor = a[(i, k)].clone();
            for j in (0..w).filter(|&j| j != k) {
                let lhs = pivot.checked_mul(&a[(i, j)])?;
                let rhs = factor.checked_mul(&a[(k, j)])?;
                a[(i, j)] = lhs.checked_sub(&rhs)?.div_exact(&prev);
            }
            a[(i, k)] = T::zero();
        }
        prev = pivot;
    }
    // Left block is now d*I with d = det of the row-permuted matrix.
    let d = prev;
    let mut adj = Matrix::filled(n, n, T::zero());
    for i in 0..n {
        for j in 0..n {
            let v = a[(i, n + j)].clone();
            adj[(i, j)] = if negate { v.checked_neg()? } else { v };
        }
    }
    let det = if negate { d.checked_neg()? } else { d };
    Ok(Some(Adjugate { det, adjugate: adj }))
}

fn swap_rows<T>(a: &mut Matrix<T>, r1: usize, r2: usize) {
    if r1 == r2 {
        return;
    }
    let cols = a.cols;
    let (lo, hi) = (r1.min(r2), r1.max(r2));
    let (head, tail) = a.data.split_at_mut(hi * cols);
    head[lo * cols..(lo + 1) * cols].swap_with_slice(&mut tail[..cols]);
}

/// Gcd of a slice; zero for an all-zero slice.
pub fn gcd_all<T: ExactInt>(values: &[T]) -> T {
    values.iter().fold(T::zero(), |g, v| g.gcd(v))
}
