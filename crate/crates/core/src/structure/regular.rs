//! Weierstrass split of a regular pencil.

use super::{kronecker_decompose, SubPencil};
use crate::error::{PencilError, Result};
use crate::exact::RatMatrix;

/// `P (sE - A) Q = diag(sI - M, sN - I)` with `N` nilpotent.
#[derive(Debug, Clone)]
pub struct RegularSplit {
    pub p: RatMatrix,
    pub q: RatMatrix,
    pub finite: SubPencil,
    pub infinite: SubPencil,
    pub m: RatMatrix,
    pub n: RatMatrix,
    pub inf_degrees: Vec<usize>,
}

/// Fails with [`PencilError::NotRegular`] when `det(sE - A)` vanishes identically.
pub fn split_regular_part(e: &RatMatrix, a: &RatMatrix) -> Result<RegularSplit> {
    if !e.is_square() || e.shape() != a.shape() {
        return Err(PencilError::NotRegular);
    }
    let dec = kronecker_decompose(e, a)?;
    if !dec.structure.is_regular() {
        return Err(PencilError::NotRegular);
    }
    Ok(RegularSplit {
        m: dec.m_finite.clone(),
        n: dec.blocks.infinite.f.clone(),
        inf_degrees: dec.structure.inf_degrees.clone(),
        finite: dec.blocks.finite,
        infinite: dec.blocks.infinite,
        p: dec.p,
        q: dec.q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::mat_pow;

    #[test]
    fn identity_pencil_is_all_finite() {
        let e = RatMatrix::identity(2);
        let a = RatMatrix::from_int_rows(&[[1, 0], [0, 2]]);
        let s = split_regular_part(&e, &a).unwrap();
        assert_eq!(s.m.shape(), (2, 2));
        assert_eq!(s.n.shape(), (0, 0));
    }

    #[test]
    fn mixed_regular_pencil() {
        let e = RatMatrix::from_int_rows(&[[1, 0], [0, 0]]);
        let a = RatMatrix::from_int_rows(&[[0, 1], [1, -1]]);
        let s = split_regular_part(&e, &a).unwrap();
        assert_eq!(s.m, RatMatrix::identity(1));
        assert!(mat_pow(&s.n, 1).is_zero());
        let sum = &(&s.p * &(&e - &a)) * &s.q;
        assert_eq!(sum, RatMatrix::block_diag(&[&(&s.finite.f - &s.finite.g), &(&s.infinite.f - &s.infinite.g)]));
    }

    #[test]
    fn singular_pencils_are_rejected() {
        let z = RatMatrix::zeros(2, 2);
        assert_eq!(split_regular_part(&z, &z).unwrap_err(), PencilError::NotRegular);
        let f = RatMatrix::from_int_rows(&[[1, 0]]);
        assert!(split_regular_part(&f, &f).is_err());
    }
}
