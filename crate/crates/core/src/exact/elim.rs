//! Rank-revealing elimination over the rationals.
//!
//! Every row is first scaled to integers, then reduced by fraction-free
//! Gauss-Jordan elimination: each update `(p * a_ij - a_ik * a_kj) / p_prev` is an
//! exact integer division, so entries stay integral (they are minors of the scaled
//! input) and only the final normalization produces fractions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::RatMatrix;
use super::rational::{denominator_lcm, gcd_all, Rational};
use crate::error::{PencilError, Result};

/// Output of [`rref`]: `transform * input == reduced`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: RatMatrix,
    pub pivots: Vec<usize>,
    pub transform: RatMatrix,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

struct IntElimination {
    pivots: Vec<usize>,
    work: Vec<Vec<BigInt>>,
    trans: Option<Vec<Vec<BigInt>>>,
    last_pivot: BigInt,
}

/// Scales each row of `m` to integers with its own denominator lcm.
fn integer_rows(m: &RatMatrix) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut rows = Vec::with_capacity(m.rows());
    let mut scales = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let row = m.row(i);
        let l = denominator_lcm(row);
        rows.push(row.iter().map(|v| (v.numer() * &l) / v.denom()).collect());
        scales.push(l);
    }
    (rows, scales)
}

fn eliminate(m: &RatMatrix, track: bool) -> IntElimination {
    let (mut work, scales) = integer_rows(m);
    let rows = m.rows();
    let cols = m.cols();
    let mut trans = track.then(|| {
        (0..rows)
            .map(|i| {
                let mut r = vec![BigInt::zero(); rows];
                r[i] = scales[i].clone();
                r
            })
            .collect::<Vec<_>>()
    });

    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut k = 0;
    for col in 0..cols {
        if k == rows {
            break;
        }
        // Smallest nonzero magnitude keeps the multipliers short.
        let Some(p) = (k..rows)
            .filter(|&i| !work[i][col].is_zero())
            .min_by_key(|&i| work[i][col].bits())
        else {
            continue;
        };
        work.swap(k, p);
        if let Some(t) = trans.as_mut() {
            t.swap(k, p);
        }
        let pivot = work[k][col].clone();
        let (head, rest) = work.split_at_mut(k);
        let (pivot_row, tail) = rest.split_first_mut().expect("pivot row");
        let update = |row: &mut Vec<BigInt>, factor: &BigInt, piv_row: &[BigInt]| {
            for (x, y) in row.iter_mut().zip(piv_row) {
                let num = &pivot * &*x - factor * y;
                debug_assert!(num.is_multiple_of(&prev), "fraction-free division not exact");
                *x = num / &prev;
            }
        };
        let factors: Vec<BigInt> = head
            .iter()
            .chain(tail.iter())
            .map(|r| r[col].clone())
            .collect();
        for (row, factor) in head.iter_mut().chain(tail.iter_mut()).zip(&factors) {
            update(row, factor, pivot_row);
        }
        if let Some(t) = trans.as_mut() {
            let (thead, trest) = t.split_at_mut(k);
            let (tpivot, ttail) = trest.split_first_mut().expect("pivot row");
            for (row, factor) in thead.iter_mut().chain(ttail.iter_mut()).zip(&factors) {
                update(row, factor, tpivot);
            }
        }
        prev = pivot;
        pivots.push(col);
        k += 1;
    }
    IntElimination { pivots, work, trans, last_pivot: prev }
}

fn to_rational_rows(rows: &[Vec<BigInt>], count: usize, divisor: &BigInt, width: usize) -> Vec<Rational> {
    let mut data = Vec::with_capacity(rows.len() * width);
    for (i, row) in rows.iter().enumerate() {
        if i < count {
            data.extend(row.iter().map(|v| Rational::new(v.clone(), divisor.clone())));
        } else {
            // Non-pivot rows: only the direction matters, strip the content.
            let g = gcd_all(row.iter());
            let g = if g.is_zero() { BigInt::one() } else { g };
            data.extend(row.iter().map(|v| Rational::from_integer(v / &g)));
        }
    }
    data
}

/// Reduced row-echelon form with pivot columns and an invertible `T` such that `T * m = R`.
pub fn rref(m: &RatMatrix) -> Rref {
    let e = eliminate(m, true);
    let rank = e.pivots.len();
    let d = e.last_pivot.clone();
    let reduced = RatMatrix::new(
        m.rows(),
        m.cols(),
        to_rational_rows(&e.work, rank, &d, m.cols()),
    )
    .expect("shape preserved");
    let trans = e.trans.expect("transform tracked");
    let transform = RatMatrix::new(m.rows(), m.rows(), to_rational_rows(&trans, rank, &d, m.rows()))
        .expect("shape preserved");
    Rref { reduced, pivots: e.pivots, transform }
}

fn rref_untracked(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let e = eliminate(m, false);
    let rank = e.pivots.len();
    let reduced = RatMatrix::new(
        m.rows(),
        m.cols(),
        to_rational_rows(&e.work, rank, &e.last_pivot, m.cols()),
    )
    .expect("shape preserved");
    (reduced, e.pivots)
}

/// Reduced row-echelon form and pivot columns, without the transform.
pub fn row_reduce(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    rref_untracked(m)
}

pub fn rank(m: &RatMatrix) -> usize {
    eliminate(m, false).pivots.len()
}

fn basis_from_rref(reduced: &RatMatrix, pivots: &[usize], cols: usize) -> RatMatrix {
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = RatMatrix::zeros(cols, free.len());
    for (k, &f) in free.iter().enumerate() {
        basis[(f, k)] = Rational::one();
        for (i, &p) in pivots.iter().enumerate() {
            basis[(p, k)] = -reduced[(i, f)].clone();
        }
    }
    basis
}

/// Columns spanning the right kernel of `m`.
///
/// Each basis vector has a 1 in its own free coordinate and 0 in the other free
/// coordinates.
pub fn nullspace_basis(m: &RatMatrix) -> RatMatrix {
    let (reduced, pivots) = rref_untracked(m);
    basis_from_rref(&reduced, &pivots, m.cols())
}

/// Consistent solution of `a * x = b`: one particular solution plus a kernel basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSolution {
    pub particular: RatMatrix,
    pub null_basis: RatMatrix,
}

/// Solves `a * x = b` (any number of right-hand-side columns). `None` when inconsistent.
pub fn solve_linear(a: &RatMatrix, b: &RatMatrix) -> Option<LinearSolution> {
    assert_eq!(a.rows(), b.rows(), "solve_linear row mismatch");
    let n = a.cols();
    let aug = RatMatrix::hstack(a.rows(), &[a, b]);
    let (reduced, pivots) = rref_untracked(&aug);
    if pivots.iter().any(|&p| p >= n) {
        return None;
    }
    let mut particular = RatMatrix::zeros(n, b.cols());
    for (i, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols() {
            particular[(p, j)] = reduced[(i, n + j)].clone();
        }
    }
    let left = reduced.submatrix(0..reduced.rows(), 0..n);
    let null_basis = basis_from_rref(&left, &pivots, n);
    Some(LinearSolution { particular, null_basis })
}

pub fn invert(m: &RatMatrix) -> Result<RatMatrix> {
    if !m.is_square() {
        return Err(PencilError::DimensionMismatch(format!(
            "cannot invert a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let r = rref(m);
    if r.rank() < m.rows() {
        return Err(PencilError::SingularMatrix);
    }
    Ok(r.transform)
}

/// `m^k` by binary exponentiation. Panics if `m` is not square.
pub fn mat_pow(m: &RatMatrix, mut k: u64) -> RatMatrix {
    assert!(m.is_square(), "mat_pow needs a square matrix");
    let mut result = RatMatrix::identity(m.rows());
    let mut base = m.clone();
    while k > 0 {
        if k & 1 == 1 {
            result = &result * &base;
        }
        k >>= 1;
        if k > 0 {
            base = &base * &base;
        }
    }
    result
}

/// Rescales every column to a primitive integer vector (same direction, sign of the
/// first nonzero kept).
pub fn primitive_columns(m: &RatMatrix) -> RatMatrix {
    let mut out = m.clone();
    for j in 0..m.cols() {
        let col: Vec<Rational> = (0..m.rows()).map(|i| m[(i, j)].clone()).collect();
        let l = denominator_lcm(&col);
        let ints: Vec<BigInt> = col.iter().map(|v| (v.numer() * &l) / v.denom()).collect();
        let g = gcd_all(&ints);
        if g.is_zero() {
            continue;
        }
        for (i, v) in ints.into_iter().enumerate() {
            out[(i, j)] = Rational::from_integer(v / &g);
        }
    }
    out
}

/// Extends independent columns `k` (n x r) to an invertible n x n matrix `[k | e_j...]`
/// using unit vectors.
pub fn complete_to_basis(k: &RatMatrix) -> RatMatrix {
    let n = k.rows();
    let (_, pivots) = rref_untracked(&k.transpose());
    debug_assert_eq!(pivots.len(), k.cols(), "columns must be independent");
    let extra: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    let mut out = RatMatrix::zeros(n, k.cols() + extra.len());
    out.set_block(0, 0, k);
    for (c, &j) in extra.iter().enumerate() {
        out[(j, k.cols() + c)] = Rational::one();
    }
    out
}

/// Reduced column-echelon basis of the span of `m`'s columns, plus pivot rows.
///
/// The returned basis restricted to the pivot rows is the identity.
pub fn column_echelon_basis(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let (reduced, pivots) = rref_untracked(&m.transpose());
    let r = pivots.len();
    (reduced.submatrix(0..r, 0..m.rows()).transpose(), pivots)
}
