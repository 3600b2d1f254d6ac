//! Exact integer linear algebra over arbitrary precision integers.
//!
//! Everything downstream (cokernel presentations, saturations, orbit actions,
//! determinant formulas) reduces to a handful of primitives implemented here:
//! column Hermite normal form, Smith normal form with tracked unimodular
//! transforms and their inverses, lattice images and saturations, integral
//! solving, and exact determinants. Intermediate entries can grow quickly, so
//! all arithmetic uses `BigInt`; there is no fixed width fast path.

mod lattice;
mod normal_form;

pub use lattice::{
    canonical_coset_representative, image_lattice, kernel_lattice, saturation, solve,
    unimodular_inverse, LatticeBasis,
};
pub use normal_form::{hnf, snf, HnfDecomposition, SmithDecomposition};

use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A dense integer matrix with row-major storage and exact arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    /// The zero matrix of the given shape. Zero rows or columns are legal.
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Build from `i64` rows; panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(*x));
            }
        }
        m
    }

    /// Build from columns living in an ambient space of `ambient_dim` rows.
    pub fn from_cols(ambient_dim: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = IntMatrix::zero(ambient_dim, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), ambient_dim, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = IntMatrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: BigInt) {
        self.data[row * self.cols + col] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.get(i, j).is_one()
                    } else {
                        self.get(i, j).is_zero()
                    }
                })
            })
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| -self.get(i, j))
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j) + other.get(i, j)
        })
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j) - other.get(i, j)
        })
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, t);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        IntMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    /// The submatrix formed by the listed columns, in order.
    pub fn select_cols(&self, indices: &[usize]) -> IntMatrix {
        IntMatrix::from_fn(self.rows, indices.len(), |i, j| {
            self.get(i, indices[j]).clone()
        })
    }

    /// The submatrix formed by the listed rows, in order.
    pub fn select_rows(&self, indices: &[usize]) -> IntMatrix {
        IntMatrix::from_fn(indices.len(), self.cols, |i, j| {
            self.get(indices[i], j).clone()
        })
    }

    pub(crate) fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub(crate) fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let t = -self.get(i, c);
            self.set(i, c, t);
        }
    }

    pub(crate) fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            let t = -self.get(r, j);
            self.set(r, j, t);
        }
    }

    /// `row[dst] += factor * row[src]`.
    pub(crate) fn row_add_mul(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for c in 0..self.cols {
            let t = self.get(dst, c) + factor * self.get(src, c);
            self.set(dst, c, t);
        }
    }

    /// `col[dst] += factor * col[src]`.
    pub(crate) fn col_add_mul(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for r in 0..self.rows {
            let t = self.get(r, dst) + factor * self.get(r, src);
            self.set(r, dst, t);
        }
    }

    /// `(row[i], row[j]) <- (x*row[i] + y*row[j], z*row[i] + w*row[j])`.
    pub(crate) fn combine_rows(
        &mut self,
        i: usize,
        j: usize,
        x: &BigInt,
        y: &BigInt,
        z: &BigInt,
        w: &BigInt,
    ) {
        for c in 0..self.cols {
            let a = self.get(i, c).clone();
            let b = self.get(j, c).clone();
            self.set(i, c, x * &a + y * &b);
            self.set(j, c, z * &a + w * &b);
        }
    }

    /// `(col[i], col[j]) <- (x*col[i] + y*col[j], z*col[i] + w*col[j])`.
    pub(crate) fn combine_cols(
        &mut self,
        i: usize,
        j: usize,
        x: &BigInt,
        y: &BigInt,
        z: &BigInt,
        w: &BigInt,
    ) {
        for r in 0..self.rows {
            let a = self.get(r, i).clone();
            let b = self.get(r, j).clone();
            self.set(r, i, x * &a + y * &b);
            self.set(r, j, z * &a + w * &b);
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// The determinant of the empty 0x0 matrix is 1.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.data.clone();
        let idx = |i: usize, j: usize| i * n + j;
        let mut negated = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[idx(k, k)].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !m[idx(r, k)].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                for c in 0..n {
                    m.swap(idx(k, c), idx(r, c));
                }
                negated = !negated;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &m[idx(k, k)] * &m[idx(i, j)] - &m[idx(i, k)] * &m[idx(k, j)];
                    m[idx(i, j)] = t / &prev;
                }
                m[idx(i, k)] = BigInt::zero();
            }
            prev = m[idx(k, k)].clone();
        }
        let d = m[idx(n - 1, n - 1)].clone();
        Ok(if negated { -d } else { d })
    }

    pub fn abs_det(&self) -> Result<BigInt> {
        self.det().map(|d| d.abs())
    }
}

impl fmt::Display for IntMatrix {
    /// Bracketed row form, e.g. `[1 -1] [1 1]`; the 0-row matrix prints empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// Convert an `i64` slice into a `BigInt` vector.
pub fn vec_i64(values: &[i64]) -> Vec<BigInt> {
    values.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn vec_add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_neg(a: &[BigInt]) -> Vec<BigInt> {
    a.iter().map(|x| -x).collect()
}

pub fn vec_is_zero(a: &[BigInt]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Bracketed vector form, e.g. `[1 0]`.
pub fn format_vector(v: &[BigInt]) -> alloc::string::String {
    use core::fmt::Write;
    let mut s = alloc::string::String::from("[");
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{x}");
    }
    s.push(']');
    s
}
