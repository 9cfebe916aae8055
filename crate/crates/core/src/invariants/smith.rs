use serde::{Deserialize, Serialize};

use super::poly::{PolyMatrix, RatPolynomial};
use crate::exact::{RatMatrix, Rational};

/// Monic invariant factors `f_1 | f_2 | ... | f_rho`, `rho` the normal rank.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InvariantFactorList {
    factors: Vec<RatPolynomial>,
}

impl InvariantFactorList {
    /// Returns `None` unless every factor is monic and the divisibility chain holds.
    pub fn new(factors: Vec<RatPolynomial>) -> Option<Self> {
        let monic = factors.iter().all(RatPolynomial::is_monic);
        let chain = factors.windows(2).all(|w| w[0].divides(&w[1]));
        (monic && chain).then_some(InvariantFactorList { factors })
    }

    pub fn factors(&self) -> &[RatPolynomial] {
        &self.factors
    }

    pub fn normal_rank(&self) -> usize {
        self.factors.len()
    }

    pub fn product(&self) -> RatPolynomial {
        self.factors.iter().fold(RatPolynomial::one(), |acc, f| &acc * f)
    }

    /// `sum deg f_i`, the size of the finite part.
    pub fn total_degree(&self) -> usize {
        self.factors.iter().map(|f| f.degree().unwrap_or(0)).sum()
    }

    /// Factors of positive degree.
    pub fn nontrivial(&self) -> impl Iterator<Item = &RatPolynomial> {
        self.factors.iter().filter(|f| !f.is_constant())
    }
}

/// `U (sF - G) V = diagonal` with `U`, `V` unimodular.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub factors: InvariantFactorList,
    pub diagonal: PolyMatrix,
    pub u: PolyMatrix,
    pub v: PolyMatrix,
}

/// Entry of least degree in the trailing submatrix starting at `k`.
fn min_degree_entry(a: &PolyMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for i in k..a.rows() {
        for j in k..a.cols() {
            if let Some(d) = a.get(i, j).degree() {
                if best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Classical elimination over the Euclidean domain `Q[s]`.
///
/// Each round moves a least-degree entry of the trailing block to the pivot,
/// makes it monic and reduces its row and column. Leftover remainders have
/// strictly smaller degree, so the next round picks one of them.
pub fn smith_form(m: &PolyMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = PolyMatrix::identity(rows);
    let mut v = PolyMatrix::identity(cols);
    let mut factors = Vec::new();
    for k in 0..rows.min(cols) {
        while let Some((pi, pj)) = min_degree_entry(&a, k) {
            a.swap_rows(k, pi);
            u.swap_rows(k, pi);
            a.swap_cols(k, pj);
            v.swap_cols(k, pj);
            let inv = Rational::from_integer(1.into()) / a.get(k, k).leading();
            a.scale_row(k, &inv);
            u.scale_row(k, &inv);
            let mut clean = true;
            for i in k + 1..rows {
                if a.get(i, k).is_zero() {
                    continue;
                }
                let (q, r) = a.get(i, k).div_rem(a.get(k, k));
                let neg = -&q;
                a.add_row_multiple(i, k, &neg);
                u.add_row_multiple(i, k, &neg);
                clean &= r.is_zero();
            }
            for j in k + 1..cols {
                if a.get(k, j).is_zero() {
                    continue;
                }
                let (q, r) = a.get(k, j).div_rem(a.get(k, k));
                let neg = -&q;
                a.add_col_multiple(j, k, &neg);
                v.add_col_multiple(j, k, &neg);
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            // Row and column are clear; the pivot must also divide the rest.
            let bad = (k + 1..rows)
                .find(|&i| (k + 1..cols).any(|j| !a.get(k, k).divides(a.get(i, j))));
            match bad {
                Some(i) => {
                    let one = RatPolynomial::one();
                    a.add_row_multiple(k, i, &one);
                    u.add_row_multiple(k, i, &one);
                }
                None => break,
            }
        }
        if a.get(k, k).is_zero() {
            break;
        }
        factors.push(a.get(k, k).clone());
    }
    let factors = InvariantFactorList::new(factors).expect("Smith diagonal forms a monic divisor chain");
    SmithForm { factors, diagonal: a, u, v }
}

pub fn invariant_factors(f: &RatMatrix, g: &RatMatrix) -> InvariantFactorList {
    smith_form(&PolyMatrix::from_pencil(f, g)).factors
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(f: &RatMatrix, g: &RatMatrix) -> SmithForm {
        let m = PolyMatrix::from_pencil(f, g);
        let sf = smith_form(&m);
        assert_eq!(sf.u.mul(&m).mul(&sf.v), sf.diagonal);
        for i in 0..sf.diagonal.rows() {
            for j in 0..sf.diagonal.cols() {
                if i != j {
                    assert!(sf.diagonal.get(i, j).is_zero());
                }
            }
        }
        assert!(sf.u.determinant().is_constant() && !sf.u.determinant().is_zero());
        assert!(sf.v.determinant().is_constant() && !sf.v.determinant().is_zero());
        sf
    }

    #[test]
    fn diagonal_pencil() {
        let sf = check(&RatMatrix::identity(2), &RatMatrix::from_int_rows(&[[1, 0], [0, 2]]));
        assert_eq!(
            sf.factors.factors(),
            &[RatPolynomial::one(), RatPolynomial::from_ints(&[2, -3, 1])]
        );
    }

    #[test]
    fn right_block_has_trivial_factor() {
        let sf = check(&RatMatrix::from_int_rows(&[[1, 0]]), &RatMatrix::from_int_rows(&[[0, 1]]));
        assert_eq!(sf.factors.factors(), &[RatPolynomial::one()]);
    }

    #[test]
    fn zero_pencil_has_no_factors() {
        let z = RatMatrix::zeros(1, 1);
        assert_eq!(check(&z, &z).factors.normal_rank(), 0);
    }

    #[test]
    fn jordan_block() {
        let g = RatMatrix::from_int_rows(&[[3, 1, 0], [0, 3, 0], [0, 0, 3]]);
        let sf = check(&RatMatrix::identity(3), &g);
        let lin = RatPolynomial::from_ints(&[-3, 1]);
        assert_eq!(sf.factors.factors(), &[RatPolynomial::one(), lin.clone(), lin.pow(2)]);
    }

    #[test]
    fn chain_validation() {
        let a = RatPolynomial::from_ints(&[-1, 1]);
        let b = RatPolynomial::from_ints(&[-2, 1]);
        assert!(InvariantFactorList::new(vec![a.clone(), b]).is_none());
        assert!(InvariantFactorList::new(vec![a.scale(&crate::exact::rat(2))]).is_none());
        assert!(InvariantFactorList::new(vec![a.clone(), a.pow(2)]).is_some());
    }
}
