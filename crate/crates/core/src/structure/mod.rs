//! Kronecker structure of `sF - G` under strict equivalence.
//!
//! [`kronecker_decompose`] returns invertible `P`, `Q` such that `P (sF - G) Q` is
//! block diagonal with, in this order,
//!
//! 1. a finite part `sI - M` (`M` is any similarity representative of the Jordan part),
//! 2. an infinite part `sN - I` with `N` nilpotent,
//! 3. a right singular part holding all nonzero column minimal indices,
//! 4. a left singular part holding all nonzero row minimal indices,
//! 5. a zero block `0_{h x g}`.
//!
//! Parts 3 and 4 are strictly equivalent to direct sums of `L_eps` and `L_zeta^T`
//! blocks but are not reduced further: the solver only needs their kernels.

mod regular;
mod staircase;
mod sylvester;
mod working;

use std::ops::Range;

use serde::{Deserialize, Serialize};

pub use regular::{split_regular_part, RegularSplit};
pub use staircase::{staircase_reduce, StaircaseForm, StaircaseStep};
pub use sylvester::{sylvester_decouple, Decoupling};

use crate::error::{PencilError, Result};
use crate::exact::{column_echelon_basis, invert, rat, solve_linear, RatMatrix};
use staircase::ranges;
use sylvester::decouple_in_place;

/// Complete list of strict-equivalence invariants, except the finite eigenvalues.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KroneckerStructure {
    /// Dimension of the finite regular part.
    pub p: usize,
    /// Degrees of the infinite elementary divisors, ascending.
    pub inf_degrees: Vec<usize>,
    /// Column minimal indices, ascending, zeros included.
    pub eps_indices: Vec<usize>,
    /// Row minimal indices, ascending, zeros included.
    pub zeta_indices: Vec<usize>,
}

impl KroneckerStructure {
    pub fn new(
        p: usize,
        mut inf_degrees: Vec<usize>,
        mut eps_indices: Vec<usize>,
        mut zeta_indices: Vec<usize>,
    ) -> Self {
        inf_degrees.retain(|&q| q > 0);
        inf_degrees.sort_unstable();
        eps_indices.sort_unstable();
        zeta_indices.sort_unstable();
        KroneckerStructure { p, inf_degrees, eps_indices, zeta_indices }
    }

    /// `dim N_r(sF - G)`.
    pub fn d(&self) -> usize {
        self.eps_indices.len()
    }

    /// `dim N_l(sF - G)`.
    pub fn t(&self) -> usize {
        self.zeta_indices.len()
    }

    pub fn g(&self) -> usize {
        self.eps_indices.iter().filter(|&&e| e == 0).count()
    }

    pub fn h(&self) -> usize {
        self.zeta_indices.iter().filter(|&&z| z == 0).count()
    }

    /// Total size of the infinite part.
    pub fn q(&self) -> usize {
        self.inf_degrees.iter().sum()
    }

    pub fn nilpotency_index(&self) -> usize {
        self.inf_degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn nonzero_eps(&self) -> impl Iterator<Item = usize> + '_ {
        self.eps_indices.iter().copied().filter(|&e| e > 0)
    }

    pub fn nonzero_zeta(&self) -> impl Iterator<Item = usize> + '_ {
        self.zeta_indices.iter().copied().filter(|&z| z > 0)
    }

    /// `(rows, cols)` of the right singular block `blockdiag(L_eps)`.
    pub fn eps_shape(&self) -> (usize, usize) {
        self.nonzero_eps().fold((0, 0), |(r, c), e| (r + e, c + e + 1))
    }

    /// `(rows, cols)` of the left singular block `blockdiag(L_zeta^T)`.
    pub fn zeta_shape(&self) -> (usize, usize) {
        self.nonzero_zeta().fold((0, 0), |(r, c), z| (r + z + 1, c + z))
    }

    /// Pencil shape implied by the canonical blocks.
    pub fn pencil_shape(&self) -> (usize, usize) {
        let (er, ec) = self.eps_shape();
        let (zr, zc) = self.zeta_shape();
        let reg = self.p + self.q();
        (reg + er + zr + self.h(), reg + ec + zc + self.g())
    }

    pub fn bookkeeping_holds(&self, rows: usize, cols: usize) -> bool {
        self.pencil_shape() == (rows, cols)
    }

    /// Regular in the sense of `det(sF - G)` not identically zero.
    pub fn is_regular(&self) -> bool {
        self.d() == 0 && self.t() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regularity {
    Regular,
    Singular,
}

/// Regular iff square with no minimal indices, which is equivalent to
/// `det(sF - G) != 0` as a polynomial.
pub fn classify_regularity(f: &RatMatrix, g: &RatMatrix) -> Regularity {
    assert_eq!(f.shape(), g.shape(), "pencil matrices must have equal shape");
    if !f.is_square() || !staircase_reduce(f, g).structure.is_regular() {
        Regularity::Singular
    } else {
        Regularity::Regular
    }
}

/// A diagonal sub-pencil `sF - G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubPencil {
    pub f: RatMatrix,
    pub g: RatMatrix,
}

impl SubPencil {
    pub fn shape(&self) -> (usize, usize) {
        self.f.shape()
    }
}

/// Index ranges of the five diagonal parts, on rows or on columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub finite: Range<usize>,
    pub infinite: Range<usize>,
    pub epsilon: Range<usize>,
    pub zeta: Range<usize>,
    pub zero: Range<usize>,
}

impl Partition {
    fn from_sizes(sizes: [usize; 5]) -> Self {
        let [finite, infinite, epsilon, zeta, zero] = ranges(&sizes);
        Partition { finite, infinite, epsilon, zeta, zero }
    }

    pub fn parts(&self) -> [Range<usize>; 5] {
        [
            self.finite.clone(),
            self.infinite.clone(),
            self.epsilon.clone(),
            self.zeta.clone(),
            self.zero.clone(),
        ]
    }
}

/// The five diagonal parts of `P (sF - G) Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPencils {
    /// `sI - M_finite`.
    pub finite: SubPencil,
    /// `sN - I`.
    pub infinite: SubPencil,
    pub epsilon: SubPencil,
    pub zeta: SubPencil,
    /// `(h, g)`: the zero block has no entries worth storing.
    pub zero_shape: (usize, usize),
}

#[derive(Debug, Clone)]
pub struct PencilDecomposition {
    pub p: RatMatrix,
    pub q: RatMatrix,
    pub q_inv: RatMatrix,
    pub structure: KroneckerStructure,
    /// Propagation matrix of the finite part: `Z^p_{k+1} = M Z^p_k`.
    pub m_finite: RatMatrix,
    pub blocks: BlockPencils,
    pub row_parts: Partition,
    pub col_parts: Partition,
    pub staircase_profile: Vec<StaircaseStep>,
}

impl PencilDecomposition {
    fn q_cols(&self, r: &Range<usize>) -> RatMatrix {
        self.q.submatrix(0..self.q.rows(), r.clone())
    }

    pub fn q_p(&self) -> RatMatrix {
        self.q_cols(&self.col_parts.finite)
    }

    pub fn q_q(&self) -> RatMatrix {
        self.q_cols(&self.col_parts.infinite)
    }

    pub fn q_eps(&self) -> RatMatrix {
        self.q_cols(&self.col_parts.epsilon)
    }

    pub fn q_zeta(&self) -> RatMatrix {
        self.q_cols(&self.col_parts.zeta)
    }

    pub fn q_g(&self) -> RatMatrix {
        self.q_cols(&self.col_parts.zero)
    }

    /// Maximal infinite degree; `N^index = 0`.
    pub fn nilpotency_index(&self) -> usize {
        self.structure.nilpotency_index()
    }

    /// The block diagonal pencil `(F_K, G_K)` assembled from the five parts.
    pub fn assembled(&self) -> (RatMatrix, RatMatrix) {
        let b = &self.blocks;
        let (h, g) = b.zero_shape;
        let zero = RatMatrix::zeros(h, g);
        let f = RatMatrix::block_diag(&[&b.finite.f, &b.infinite.f, &b.epsilon.f, &b.zeta.f, &zero]);
        let gk = RatMatrix::block_diag(&[&b.finite.g, &b.infinite.g, &b.epsilon.g, &b.zeta.g, &zero]);
        (f, gk)
    }

    /// Checks `P (sF - G) Q` against the assembled diagonal at `s = 0` and `s = 1`;
    /// two points determine a linear pencil.
    pub fn reconstructs(&self, f: &RatMatrix, g: &RatMatrix) -> bool {
        let (fk, gk) = self.assembled();
        let one = rat(1);
        let at = |s: &crate::exact::Rational, a: &RatMatrix, b: &RatMatrix| &a.scale(s) - b;
        let lhs0 = &(&self.p * &at(&rat(0), f, g)) * &self.q;
        let lhs1 = &(&self.p * &at(&one, f, g)) * &self.q;
        lhs0 == at(&rat(0), &fk, &gk) && lhs1 == at(&one, &fk, &gk)
    }
}

/// Full block-diagonal decomposition with transforms and column partition of `Q`.
pub fn kronecker_decompose(f: &RatMatrix, g: &RatMatrix) -> Result<PencilDecomposition> {
    if f.shape() != g.shape() {
        return Err(PencilError::DimensionMismatch(format!(
            "F is {}x{} but G is {}x{}",
            f.rows(),
            f.cols(),
            g.rows(),
            g.cols()
        )));
    }
    let sf = staircase_reduce(f, g);
    let rr = sf.row_ranges();
    let cr = sf.col_ranges();
    let structure = sf.structure.clone();
    let profile = sf.main_profile.clone();
    let mut w = sf.work;

    // Sections are [eps, inf, fin, zeta, zero]; the zero section is already isolated.
    for b in 0..3 {
        decouple_in_place(
            &mut w,
            rr[b].clone(),
            cr[b].clone(),
            rr[b + 1].start..rr[3].end,
            cr[b + 1].start..cr[3].end,
        )?;
    }

    let (_, g_inf) = w.block(rr[1].clone(), cr[1].clone());
    w.row_op(rr[1].start, &invert(&g_inf)?);
    let (f_fin, _) = w.block(rr[2].clone(), cr[2].clone());
    w.row_op(rr[2].start, &invert(&f_fin)?);

    let order = [2, 1, 0, 3, 4];
    let row_perm: Vec<usize> = order.iter().flat_map(|&b| rr[b].clone()).collect();
    let col_perm: Vec<usize> = order.iter().flat_map(|&b| cr[b].clone()).collect();
    w.permute_rows(0, &row_perm);
    w.permute_cols(0, &col_perm);
    let row_parts = Partition::from_sizes(order.map(|b| rr[b].len()));
    let col_parts = Partition::from_sizes(order.map(|b| cr[b].len()));

    // Any column basis of the zero part works; use the reduced echelon one so the free
    // coordinates of the zero part map onto coordinates of Y.
    let zr = col_parts.zero.clone();
    if !zr.is_empty() {
        let q_g = w.q.submatrix(0..w.q.rows(), zr.clone());
        let (basis, _) = column_echelon_basis(&q_g);
        let change = solve_linear(&q_g, &basis).expect("basis lies in the span").particular;
        w.col_op(zr.start, &change);
    }

    let sub = |rows: &Range<usize>, cols: &Range<usize>| {
        let (f, g) = w.block(rows.clone(), cols.clone());
        SubPencil { f, g }
    };
    let blocks = BlockPencils {
        finite: sub(&row_parts.finite, &col_parts.finite),
        infinite: sub(&row_parts.infinite, &col_parts.infinite),
        epsilon: sub(&row_parts.epsilon, &col_parts.epsilon),
        zeta: sub(&row_parts.zeta, &col_parts.zeta),
        zero_shape: (row_parts.zero.len(), col_parts.zero.len()),
    };
    let m_finite = blocks.finite.g.clone();
    let q_inv = invert(&w.q)?;

    let dec = PencilDecomposition {
        p: w.p,
        q: w.q,
        q_inv,
        structure,
        m_finite,
        blocks,
        row_parts,
        col_parts,
        staircase_profile: profile,
    };
    debug_assert!(dec.reconstructs(f, g));
    Ok(dec)
}

/// `[rows, cols]` of each diagonal part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockShapes {
    pub finite: [usize; 2],
    pub infinite: [usize; 2],
    pub epsilon: [usize; 2],
    pub zeta: [usize; 2],
    pub zero: [usize; 2],
}

/// Serializable summary of a decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub rows: usize,
    pub cols: usize,
    pub regularity: Regularity,
    pub p: usize,
    pub q: usize,
    pub inf_degrees: Vec<usize>,
    pub eps: Vec<usize>,
    pub zeta: Vec<usize>,
    pub d: usize,
    pub t: usize,
    pub g: usize,
    pub h: usize,
    pub nilpotency_index: usize,
    pub block_shapes: BlockShapes,
    pub bookkeeping_ok: bool,
    /// No column minimal indices, the structural half of the uniqueness condition.
    pub uniqueness_precondition: bool,
}

pub fn structure_report(dec: &PencilDecomposition) -> StructureReport {
    let s = &dec.structure;
    let (rows, cols) = (dec.p.rows(), dec.q.rows());
    let shape = |p: &SubPencil| [p.f.rows(), p.f.cols()];
    let regular = rows == cols && s.is_regular();
    StructureReport {
        rows,
        cols,
        regularity: if regular { Regularity::Regular } else { Regularity::Singular },
        p: s.p,
        q: s.q(),
        inf_degrees: s.inf_degrees.clone(),
        eps: s.eps_indices.clone(),
        zeta: s.zeta_indices.clone(),
        d: s.d(),
        t: s.t(),
        g: s.g(),
        h: s.h(),
        nilpotency_index: s.nilpotency_index(),
        block_shapes: BlockShapes {
            finite: shape(&dec.blocks.finite),
            infinite: shape(&dec.blocks.infinite),
            epsilon: shape(&dec.blocks.epsilon),
            zeta: shape(&dec.blocks.zeta),
            zero: [dec.blocks.zero_shape.0, dec.blocks.zero_shape.1],
        },
        bookkeeping_ok: s.bookkeeping_holds(rows, cols),
        uniqueness_precondition: s.d() == 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{mat_pow, rank};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_int_rows(rows)
    }

    #[test]
    fn regularity_examples() {
        assert_eq!(
            classify_regularity(&RatMatrix::identity(2), &m(&[&[1, 0], &[0, 2]])),
            Regularity::Regular
        );
        assert_eq!(
            classify_regularity(&m(&[&[1, 0], &[0, 0]]), &m(&[&[0, 1], &[1, -1]])),
            Regularity::Regular
        );
        assert_eq!(classify_regularity(&m(&[&[1, 0]]), &m(&[&[0, 1]])), Regularity::Singular);
        let z = RatMatrix::zeros(2, 2);
        assert_eq!(classify_regularity(&z, &z), Regularity::Singular);
    }

    #[test]
    fn scalar_finite_pencil() {
        let one = RatMatrix::identity(1);
        let dec = kronecker_decompose(&one, &one).unwrap();
        assert_eq!(dec.structure.p, 1);
        assert_eq!(dec.m_finite, one);
    }

    #[test]
    fn zero_rectangular_pencil() {
        let z = RatMatrix::zeros(2, 3);
        let dec = kronecker_decompose(&z, &z).unwrap();
        assert_eq!(dec.structure.g(), 3);
        assert_eq!(dec.structure.h(), 2);
        assert_eq!(dec.structure.p, 0);
        assert_eq!(dec.structure.q(), 0);
        assert_eq!(dec.q_g(), RatMatrix::identity(3));
    }

    #[test]
    fn worked_regular_pencil() {
        let f = m(&[&[1, 0], &[0, 0]]);
        let g = m(&[&[0, 1], &[1, -1]]);
        let dec = kronecker_decompose(&f, &g).unwrap();
        assert_eq!(dec.structure.p, 1);
        assert_eq!(dec.structure.inf_degrees, vec![1]);
        assert_eq!(dec.m_finite, RatMatrix::identity(1));
        let qp = dec.q_p();
        assert_eq!(qp[(0, 0)], qp[(1, 0)]);
        assert!(dec.reconstructs(&f, &g));
    }

    #[test]
    fn mixed_canonical_blocks() {
        // L_1 (+) (s - 2) (+) H_1 (+) L_1^T, then a fixed unimodular scramble.
        let f = RatMatrix::block_diag(&[&m(&[&[1, 0]]), &m(&[&[1]]), &m(&[&[0]]), &m(&[&[1], &[0]])]);
        let g = RatMatrix::block_diag(&[&m(&[&[0, 1]]), &m(&[&[2]]), &m(&[&[1]]), &m(&[&[0], &[1]])]);
        let mut left = RatMatrix::identity(5);
        let mut right = RatMatrix::identity(5);
        for i in 0..4 {
            left[(i, i + 1)] = rat(1 + i as i64 % 2);
            right[(i + 1, i)] = rat(-1);
        }
        let sf = &(&left * &f) * &right;
        let sg = &(&left * &g) * &right;
        let dec = kronecker_decompose(&sf, &sg).unwrap();
        assert_eq!(dec.structure.eps_indices, vec![1]);
        assert_eq!(dec.structure.zeta_indices, vec![1]);
        assert_eq!(dec.structure.inf_degrees, vec![1]);
        assert_eq!(dec.structure.p, 1);
        assert_eq!(dec.m_finite, m(&[&[2]]));
        assert!(dec.reconstructs(&sf, &sg));
        assert_eq!(rank(&dec.p), 5);
        assert_eq!(&dec.q * &dec.q_inv, RatMatrix::identity(5));
        let r = structure_report(&dec);
        assert!(r.bookkeeping_ok);
        assert!(!r.uniqueness_precondition);
    }

    #[test]
    fn nilpotent_part_has_exact_index() {
        let f = RatMatrix::block_diag(&[&m(&[&[0, 1], &[0, 0]]), &m(&[&[0]])]);
        let dec = kronecker_decompose(&f, &RatMatrix::identity(3)).unwrap();
        assert_eq!(dec.structure.inf_degrees, vec![1, 2]);
        let n = &dec.blocks.infinite.f;
        assert!(mat_pow(n, 2).is_zero());
        assert!(!mat_pow(n, 1).is_zero());
        assert_eq!(dec.blocks.infinite.g, RatMatrix::identity(3));
    }

    #[test]
    fn report_examples() {
        let f = RatMatrix::identity(2);
        let dec = kronecker_decompose(&f, &m(&[&[1, 0], &[0, 2]])).unwrap();
        let r = structure_report(&dec);
        assert_eq!((r.d, r.t), (0, 0));
        assert_eq!(r.regularity, Regularity::Regular);

        let dec = kronecker_decompose(&m(&[&[1, 0]]), &m(&[&[0, 1]])).unwrap();
        let r = structure_report(&dec);
        assert_eq!(r.eps, vec![1]);
        assert!(!r.uniqueness_precondition);

        let z = RatMatrix::zeros(1, 1);
        let r = structure_report(&kronecker_decompose(&z, &z).unwrap());
        assert_eq!((r.g, r.h), (1, 1));
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        assert!(kronecker_decompose(&RatMatrix::zeros(1, 2), &RatMatrix::zeros(2, 1)).is_err());
    }
}
