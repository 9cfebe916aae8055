//! Removal of the coupling block of a block upper triangular pencil.
//!
//! For `[sF11 - G11, sF12 - G12; 0, sF22 - G22]` find `X`, `Y` with
//!
//! ```text
//! F11 Y + X F22 = -F12
//! G11 Y + X G22 = -G12
//! ```
//!
//! so that `[I X; 0 I] (sF - G) [I Y; 0 I]` is block diagonal. The pair is solved as one
//! vectorized linear system.

use std::ops::Range;

use num_traits::Zero;

use super::working::Working;
use crate::error::{PencilError, Result};
use crate::exact::{solve_linear, RatMatrix, Rational};

/// Row correction `X` (`rows1 x rows2`) and column correction `Y` (`cols1 x cols2`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoupling {
    pub x: RatMatrix,
    pub y: RatMatrix,
}

struct Blocks<'a> {
    f11: &'a RatMatrix,
    g11: &'a RatMatrix,
    f12: &'a RatMatrix,
    g12: &'a RatMatrix,
    f22: &'a RatMatrix,
    g22: &'a RatMatrix,
}

fn solve_coupling(b: &Blocks<'_>) -> Result<Decoupling> {
    let (r1, c1) = b.f11.shape();
    let (r2, c2) = b.f22.shape();
    let y_len = c1 * c2;
    let unknowns = y_len + r1 * r2;
    let eqs = 2 * r1 * c2;
    let mut a = RatMatrix::zeros(eqs, unknowns);
    let mut rhs = RatMatrix::zeros(eqs, 1);
    for (half, (m11, m22, m12)) in [(b.f11, b.f22, b.f12), (b.g11, b.g22, b.g12)]
        .into_iter()
        .enumerate()
    {
        for i in 0..r1 {
            for j in 0..c2 {
                let e = half * r1 * c2 + i * c2 + j;
                for l in 0..c1 {
                    let v = &m11[(i, l)];
                    if !v.is_zero() {
                        a[(e, l * c2 + j)] = v.clone();
                    }
                }
                for l in 0..r2 {
                    let v = &m22[(l, j)];
                    if !v.is_zero() {
                        a[(e, y_len + i * r2 + l)] = v.clone();
                    }
                }
                rhs[(e, 0)] = -m12[(i, j)].clone();
            }
        }
    }
    let sol = solve_linear(&a, &rhs).ok_or(PencilError::CouplingUnsolvable)?;
    let v: Vec<Rational> = sol.particular.into_entries();
    let y = RatMatrix::new(c1, c2, v[..y_len].to_vec()).expect("shape");
    let x = RatMatrix::new(r1, r2, v[y_len..].to_vec()).expect("shape");
    Ok(Decoupling { x, y })
}

/// Solves the coupling equations for a pencil split after `split_row` rows and
/// `split_col` columns. The lower-left block must be zero.
pub fn sylvester_decouple(
    f: &RatMatrix,
    g: &RatMatrix,
    split_row: usize,
    split_col: usize,
) -> Result<Decoupling> {
    if f.shape() != g.shape() || split_row > f.rows() || split_col > f.cols() {
        return Err(PencilError::DimensionMismatch("invalid pencil split".into()));
    }
    let (r, c) = f.shape();
    let lower_f = f.submatrix(split_row..r, 0..split_col);
    let lower_g = g.submatrix(split_row..r, 0..split_col);
    if !lower_f.is_zero() || !lower_g.is_zero() {
        return Err(PencilError::InvalidInput("pencil is not block upper triangular".into()));
    }
    let parts = |m: &RatMatrix| {
        (
            m.submatrix(0..split_row, 0..split_col),
            m.submatrix(0..split_row, split_col..c),
            m.submatrix(split_row..r, split_col..c),
        )
    };
    let (f11, f12, f22) = parts(f);
    let (g11, g12, g22) = parts(g);
    solve_coupling(&Blocks { f11: &f11, g11: &g11, f12: &f12, g12: &g12, f22: &f22, g22: &g22 })
}

/// Decouples section `(rows1, cols1)` from the trailing section `(rows2, cols2)` in place.
pub(crate) fn decouple_in_place(
    w: &mut Working,
    rows1: Range<usize>,
    cols1: Range<usize>,
    rows2: Range<usize>,
    cols2: Range<usize>,
) -> Result<()> {
    let (f11, g11) = w.block(rows1.clone(), cols1.clone());
    let (f12, g12) = w.block(rows1.clone(), cols2.clone());
    if f12.is_zero() && g12.is_zero() {
        return Ok(());
    }
    let (f22, g22) = w.block(rows2.clone(), cols2.clone());
    let d = solve_coupling(&Blocks { f11: &f11, g11: &g11, f12: &f12, g12: &g12, f22: &f22, g22: &g22 })?;
    w.add_rows(rows1.clone(), rows2, &d.x);
    w.add_cols(cols2.clone(), cols1, &d.y);
    debug_assert!(w.f.submatrix(rows1.clone(), cols2.clone()).is_zero());
    debug_assert!(w.g.submatrix(rows1, cols2).is_zero());
    Ok(())
}
