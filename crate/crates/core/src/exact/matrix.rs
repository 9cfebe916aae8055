use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Range, Sub};

use num_traits::{One, Zero};

use super::rational::{format_rational, rat, Rational};
use crate::error::{PencilError, Result};

/// Dense row-major matrix of exact rationals.
///
/// Zero-sized shapes (`0 x n`, `n x 0`) are ordinary values; they stand for absent blocks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(PencilError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(RatMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
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
        RatMatrix { rows, cols, data }
    }

    /// Builds a matrix from explicit rows; `cols` fixes the width when there are no rows.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(PencilError::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(RatMatrix { rows: r, cols, data })
    }

    /// Integer literal convenience. Panics on ragged input.
    pub fn from_int_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| rat(v)).collect())
            .collect();
        Self::from_rows(rows, cols).expect("ragged integer rows")
    }

    pub fn column_vector(entries: Vec<Rational>) -> Self {
        RatMatrix { rows: entries.len(), cols: 1, data: entries }
    }

    pub fn from_int_col(entries: &[i64]) -> Self {
        Self::column_vector(entries.iter().map(|&v| rat(v)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> RatMatrix {
        Self::column_vector((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    /// Entries in storage order as `(a, b, ...)`; meant for column vectors.
    pub fn tuple_string(&self) -> String {
        let parts: Vec<String> = self.data.iter().map(format_rational).collect();
        format!("({})", parts.join(", "))
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> RatMatrix {
        assert!(rows.end <= self.rows && cols.end <= self.cols, "submatrix out of bounds");
        let (r0, c0) = (rows.start, cols.start);
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> RatMatrix {
        Self::from_fn(idx.len(), self.cols, |i, j| self[(idx[i], j)].clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> RatMatrix {
        Self::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &RatMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    /// Horizontal concatenation; `rows` is needed when `parts` is empty.
    pub fn hstack(rows: usize, parts: &[&RatMatrix]) -> RatMatrix {
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut c0 = 0;
        for p in parts {
            assert_eq!(p.rows, rows, "hstack row mismatch");
            out.set_block(0, c0, p);
            c0 += p.cols;
        }
        out
    }

    pub fn vstack(cols: usize, parts: &[&RatMatrix]) -> RatMatrix {
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut out = Self::zeros(rows, cols);
        let mut r0 = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "vstack column mismatch");
            out.set_block(r0, 0, p);
            r0 += p.rows;
        }
        out
    }

    pub fn block_diag(parts: &[&RatMatrix]) -> RatMatrix {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            out.set_block(r0, c0, p);
            r0 += p.rows;
            c0 += p.cols;
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Permutation matrix `P` with `P * x = x[perm]`.
    pub fn permutation(perm: &[usize]) -> RatMatrix {
        let mut p = Self::zeros(perm.len(), perm.len());
        for (i, &j) in perm.iter().enumerate() {
            p[(i, j)] = Rational::one();
        }
        p
    }

    fn zip_with(&self, other: &RatMatrix, f: impl Fn(&Rational, &Rational) -> Rational) -> RatMatrix {
        assert_eq!(self.shape(), other.shape(), "elementwise shape mismatch");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;

    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Mul for RatMatrix {
    type Output = RatMatrix;

    fn mul(self, rhs: RatMatrix) -> RatMatrix {
        &self * &rhs
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;

    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;

    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;

    fn neg(self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| -v).collect(),
        }
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix {}x{} {}", self.rows, self.cols, self)
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", format_rational(&self[(i, j)]))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_and_stacking() {
        let a = RatMatrix::from_int_rows(&[[1, 2], [3, 4]]);
        let b = RatMatrix::from_int_rows(&[[0, 1], [1, 0]]);
        assert_eq!(&a * &b, RatMatrix::from_int_rows(&[[2, 1], [4, 3]]));
        let h = RatMatrix::hstack(2, &[&a, &b]);
        assert_eq!(h.shape(), (2, 4));
        assert_eq!(h.submatrix(0..2, 2..4), b);
        let d = RatMatrix::block_diag(&[&a, &RatMatrix::zeros(0, 1), &b]);
        assert_eq!(d.shape(), (4, 5));
        assert!(d.submatrix(0..2, 2..5).is_zero());
    }

    #[test]
    fn empty_shapes_compose() {
        let e = RatMatrix::zeros(3, 0);
        let f = RatMatrix::zeros(0, 2);
        let p = &e * &f;
        assert_eq!(p.shape(), (3, 2));
        assert!(p.is_zero());
        assert_eq!((&f * &RatMatrix::zeros(2, 4)).shape(), (0, 4));
        assert_eq!(e.transpose().shape(), (0, 3));
    }

    #[test]
    fn permutation_reorders() {
        let x = RatMatrix::from_int_col(&[10, 20, 30]);
        let p = RatMatrix::permutation(&[2, 0, 1]);
        assert_eq!(&p * &x, RatMatrix::from_int_col(&[30, 10, 20]));
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(RatMatrix::new(2, 2, vec![rat(1)]).is_err());
        assert!(RatMatrix::from_rows(vec![vec![rat(1)], vec![]], 1).is_err());
    }
}
