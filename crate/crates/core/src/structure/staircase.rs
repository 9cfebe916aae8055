//! Exact staircase reduction.
//!
//! One staircase pass compresses the column kernel of `F`, then row-compresses the
//! matching columns of `G`, and repeats on the trailing pencil until `F` has full column
//! rank. With `nu_i` the kernel dimension and `mu_i` the rank of the compressed `G`
//! columns at step `i`, the leading section carries exactly the right singular blocks
//! and the infinite elementary divisors:
//!
//! * `nu_i - mu_i` blocks `L_{i-1}`,
//! * `mu_i - nu_{i+1}` infinite divisors of degree `i`.
//!
//! The trailing section holds the finite and left singular structure. Running the same
//! pass on transposed sub-pencils separates the remaining parts, giving the block upper
//! triangular layout `[eps | inf | fin | zeta | zero]`.

use std::ops::Range;

use super::working::{rotate_front, Working};
use super::KroneckerStructure;
use crate::exact::{complete_to_basis, nullspace_basis, primitive_columns, RatMatrix};

/// Rank increments of one staircase pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct StaircaseStep {
    /// Dimension of the column kernel of `F` on the trailing pencil.
    pub nu: usize,
    /// Rank of `G` restricted to that kernel.
    pub mu: usize,
}

/// Indices read off a staircase profile.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub(crate) struct ProfileCounts {
    pub right_indices: Vec<usize>,
    pub inf_degrees: Vec<usize>,
}

pub(crate) fn read_profile(steps: &[StaircaseStep]) -> ProfileCounts {
    let mut counts = ProfileCounts::default();
    for (i, s) in steps.iter().enumerate() {
        counts.right_indices.extend(std::iter::repeat_n(i, s.nu - s.mu));
        let next_nu = steps.get(i + 1).map_or(0, |n| n.nu);
        counts.inf_degrees.extend(std::iter::repeat_n(i + 1, s.mu - next_nu));
    }
    counts
}

/// Row transform `[e_j^T ...; W^T]` with `W^T m = 0`: the first rows keep a full-row-rank
/// copy of `m`, the last `W.cols()` rows of the product vanish.
fn row_compression(m: &RatMatrix) -> (RatMatrix, usize) {
    let w = primitive_columns(&nullspace_basis(&m.transpose()));
    let full = complete_to_basis(&w);
    let n = m.rows();
    let k = w.cols();
    let mut order: Vec<usize> = (k..n).collect();
    order.extend(0..k);
    (full.select_cols(&order).transpose(), n - k)
}

/// One staircase pass on the region `rows x cols` of a block upper triangular working
/// pencil. Returns the steps and the size of the leading section.
pub(crate) fn column_pass(
    w: &mut Working,
    rows: Range<usize>,
    cols: Range<usize>,
) -> (Vec<StaircaseStep>, usize, usize) {
    let (mut r0, mut c0) = (rows.start, cols.start);
    let mut steps = Vec::new();
    loop {
        let f_sub = w.f.submatrix(r0..rows.end, c0..cols.end);
        let kernel = primitive_columns(&nullspace_basis(&f_sub));
        let nu = kernel.cols();
        if nu == 0 {
            break;
        }
        w.col_op(c0, &complete_to_basis(&kernel));
        let g1 = w.g.submatrix(r0..rows.end, c0..c0 + nu);
        let (p_loc, mu) = row_compression(&g1);
        w.row_op(r0, &p_loc);
        debug_assert!(w.f.submatrix(r0..rows.end, c0..c0 + nu).is_zero());
        debug_assert!(w.g.submatrix(r0 + mu..rows.end, c0..c0 + nu).is_zero());
        steps.push(StaircaseStep { nu, mu });
        r0 += mu;
        c0 += nu;
    }
    (steps, r0 - rows.start, c0 - cols.start)
}

/// Runs [`column_pass`] on the transpose of a region and maps the result back, then
/// reorders so the region becomes `[rest *; 0 lead^T]`. Returns the transposed-pass
/// steps and the `(rows, cols)` of the trailing `lead^T` section.
fn transposed_pass(
    w: &mut Working,
    rows: Range<usize>,
    cols: Range<usize>,
) -> (Vec<StaircaseStep>, usize, usize) {
    let (f, g) = w.block(rows.clone(), cols.clone());
    let mut t = Working::new(&f.transpose(), &g.transpose());
    let (tr, tc) = (t.rows(), t.cols());
    let (steps, lead_r, lead_c) = column_pass(&mut t, 0..tr, 0..tc);
    // P' B^T Q' = T  =>  Q'^T B P'^T = T^T, whose leading block is lead_c x lead_r.
    w.row_op(rows.start, &t.q.transpose());
    w.col_op(cols.start, &t.p.transpose());
    w.permute_rows(rows.start, &rotate_front(rows.len(), lead_c));
    w.permute_cols(cols.start, &rotate_front(cols.len(), lead_r));
    (steps, lead_c, lead_r)
}

/// The block upper triangular staircase form of a pencil.
#[derive(Debug, Clone)]
pub struct StaircaseForm {
    pub(crate) work: Working,
    /// Row counts of the `[eps | inf | fin | zeta | zero]` sections.
    pub row_sizes: [usize; 5],
    /// Column counts of the same sections.
    pub col_sizes: [usize; 5],
    /// Profile of the pass over the full pencil (right indices and infinite degrees).
    pub main_profile: Vec<StaircaseStep>,
    /// Profile of the transposed pass that isolates the infinite part.
    pub infinite_profile: Vec<StaircaseStep>,
    /// Profile of the transposed pass that isolates the left singular part.
    pub left_profile: Vec<StaircaseStep>,
    pub structure: KroneckerStructure,
}

impl StaircaseForm {
    /// Transformed `(P F Q, P G Q)`.
    pub fn pencil(&self) -> (&RatMatrix, &RatMatrix) {
        (&self.work.f, &self.work.g)
    }

    pub fn transforms(&self) -> (&RatMatrix, &RatMatrix) {
        (&self.work.p, &self.work.q)
    }

    pub(crate) fn row_ranges(&self) -> [Range<usize>; 5] {
        ranges(&self.row_sizes)
    }

    pub(crate) fn col_ranges(&self) -> [Range<usize>; 5] {
        ranges(&self.col_sizes)
    }
}

pub(crate) fn ranges(sizes: &[usize; 5]) -> [Range<usize>; 5] {
    let mut start = 0;
    sizes.map(|s| {
        let r = start..start + s;
        start += s;
        r
    })
}

/// Moves the common kernels of `F` and `G` to trailing zero rows and columns.
/// Returns `(h, g)`.
fn deflate_zero_part(w: &mut Working) -> (usize, usize) {
    let (r, c) = (w.rows(), w.cols());
    let stacked = RatMatrix::vstack(c, &[&w.f, &w.g]);
    let col_kernel = primitive_columns(&nullspace_basis(&stacked));
    let g = col_kernel.cols();
    let full = complete_to_basis(&col_kernel);
    let order = rotate_front(c, g);
    w.col_op(0, &full.select_cols(&order));

    let side = RatMatrix::hstack(r, &[&w.f, &w.g]);
    let (p_loc, kept) = row_compression(&side);
    w.row_op(0, &p_loc);
    let h = r - kept;
    debug_assert!(w.f.submatrix(0..r, c - g..c).is_zero());
    debug_assert!(w.g.submatrix(r - h..r, 0..c).is_zero());
    (h, g)
}

/// Reduces `sF - G` to block upper triangular staircase form with diagonal sections
/// `[eps | inf | fin | zeta | zero]` and reads off the full set of indices.
pub fn staircase_reduce(f: &RatMatrix, g: &RatMatrix) -> StaircaseForm {
    assert_eq!(f.shape(), g.shape(), "pencil matrices must have equal shape");
    let mut w = Working::new(f, g);
    let (h, gz) = deflate_zero_part(&mut w);
    let (sr, sc) = (w.rows() - h, w.cols() - gz);

    let (main_profile, lead_r, lead_c) = column_pass(&mut w, 0..sr, 0..sc);
    let (infinite_profile, inf_r, inf_c) = transposed_pass(&mut w, 0..lead_r, 0..lead_c);
    let (left_profile, zeta_r, zeta_c) = transposed_pass(&mut w, lead_r..sr, lead_c..sc);
    debug_assert_eq!(inf_r, inf_c, "infinite section must be square");

    let main = read_profile(&main_profile);
    let left = read_profile(&left_profile);
    debug_assert_eq!(read_profile(&infinite_profile).inf_degrees, main.inf_degrees);
    debug_assert!(read_profile(&infinite_profile).right_indices.is_empty());
    debug_assert!(left.inf_degrees.is_empty());

    let mut eps = vec![0; gz];
    eps.extend(main.right_indices);
    let mut zeta = vec![0; h];
    zeta.extend(left.right_indices);
    let fin_r = sr - lead_r - zeta_r;
    let fin_c = sc - lead_c - zeta_c;
    debug_assert_eq!(fin_r, fin_c, "finite section must be square");
    let structure = KroneckerStructure::new(fin_r, main.inf_degrees, eps, zeta);

    StaircaseForm {
        work: w,
        row_sizes: [lead_r - inf_r, inf_r, fin_r, zeta_r, h],
        col_sizes: [lead_c - inf_c, inf_c, fin_c, zeta_c, gz],
        main_profile,
        infinite_profile,
        left_profile,
        structure,
    }
}
