//! Brute-force checks that share no code with the structural solver beyond exact
//! arithmetic: unroll the recurrence over a horizon and measure the solution set.

mod generate;
mod sparse;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

pub use generate::{
    canonical_pencil, random_spec, random_structured_pencil, scramble, EigenBlock, GeneratedPencil, SpecLimits,
    StructureSpec,
};

use crate::error::{PencilError, Result};
use crate::exact::{serde_rational, RatMatrix, Rational};
use crate::solver::Trajectory;
use sparse::{Echelon, SparseRow};

/// `F Y_{k+1} - G Y_k = 0` for `k = 0..K`, optionally with `Y_0 = Y0`, over the unknowns
/// `[Y_0; ...; Y_K]`.
#[derive(Debug, Clone)]
pub struct HorizonSystem {
    horizon: usize,
    dim: usize,
    rows: Vec<SparseRow>,
    rhs: Vec<Rational>,
}

impl HorizonSystem {
    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        (self.horizon + 1) * self.dim
    }

    /// Dense `[A | b]`.
    pub fn to_dense(&self) -> (RatMatrix, RatMatrix) {
        let mut a = RatMatrix::zeros(self.rows(), self.cols());
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r {
                a[(i, *j)] = v.clone();
            }
        }
        (a, RatMatrix::column_vector(self.rhs.clone()))
    }

    /// `(rank A, rank [A | b])`.
    fn ranks(&self) -> (usize, usize) {
        let n = self.cols();
        let mut e = Echelon::default();
        for (r, b) in self.rows.iter().zip(&self.rhs) {
            let mut row = r.clone();
            if !b.is_zero() {
                row.push((n, b.clone()));
            }
            e.insert(row);
        }
        let aug = e.rank();
        let a = aug - usize::from(e.has_pivot(n));
        (a, aug)
    }

    /// Rank of the columns from `first` on.
    fn tail_rank(&self, first: usize) -> usize {
        let mut e = Echelon::default();
        for r in &self.rows {
            let row: SparseRow = r.iter().filter(|(j, _)| *j >= first).cloned().collect();
            if !row.is_empty() {
                e.insert(row);
            }
        }
        e.rank()
    }
}

pub fn build_horizon_system(f: &RatMatrix, g: &RatMatrix, y0: Option<&RatMatrix>, horizon: usize) -> HorizonSystem {
    assert_eq!(f.shape(), g.shape(), "pencil matrices must have equal shape");
    let (m, n) = f.shape();
    let mut rows = Vec::with_capacity(horizon * m + n);
    let mut rhs = Vec::with_capacity(horizon * m + n);
    if let Some(y) = y0 {
        assert_eq!(y.shape(), (n, 1), "initial vector has the wrong shape");
        for j in 0..n {
            rows.push(vec![(j, Rational::from_integer(1.into()))]);
            rhs.push(y[(j, 0)].clone());
        }
    }
    for k in 0..horizon {
        for i in 0..m {
            let mut row = SparseRow::new();
            for j in 0..n {
                if !g[(i, j)].is_zero() {
                    row.push((k * n + j, -g[(i, j)].clone()));
                }
            }
            for j in 0..n {
                if !f[(i, j)].is_zero() {
                    row.push(((k + 1) * n + j, f[(i, j)].clone()));
                }
            }
            rows.push(row);
            rhs.push(Rational::zero());
        }
    }
    HorizonSystem { horizon, dim: n, rows, rhs }
}

/// Outcome of the brute-force check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleOutcome {
    pub feasible: bool,
    /// Dimension of the set of admissible `(Y_0, ..., Y_K)`; `None` when infeasible.
    pub affine_dim: Option<usize>,
    pub horizon: usize,
    pub lookahead: usize,
}

/// Default horizon `rows + cols`, which exceeds every minimal index and nilpotency index.
pub fn default_horizon(f: &RatMatrix) -> usize {
    f.rows() + f.cols()
}

/// Feasibility and dimension of the solution set over `K` steps.
///
/// A truncated horizon leaves the last sample underconstrained by equations that only
/// bite later. The system is therefore unrolled `rows + cols` steps further and the
/// solution set projected onto the first `K + 1` samples, which counts exactly those
/// prefixes that extend to longer solutions.
pub fn oracle_classify(f: &RatMatrix, g: &RatMatrix, y0: Option<&RatMatrix>, horizon: usize) -> OracleOutcome {
    let lookahead = default_horizon(f);
    let sys = build_horizon_system(f, g, y0, horizon + lookahead);
    let (rank_a, rank_aug) = sys.ranks();
    let head = (horizon + 1) * f.cols();
    let feasible = rank_a == rank_aug;
    let affine_dim = feasible.then(|| head + sys.tail_rank(head) - rank_a);
    OracleOutcome { feasible, affine_dim, horizon, lookahead }
}

/// Plain nullity of the truncated system, without lookahead.
pub fn truncated_dimension(sys: &HorizonSystem) -> Option<usize> {
    let (a, aug) = sys.ranks();
    (a == aug).then(|| sys.cols() - a)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualEntry {
    /// Offset of the step `k -> k+1` from `k0`.
    pub step: usize,
    pub row: usize,
    #[serde(with = "serde_rational")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub steps_checked: usize,
    pub nonzero: Vec<ResidualEntry>,
    #[serde(with = "serde_rational")]
    pub max_abs: Rational,
}

impl ResidualReport {
    pub fn pass(&self) -> bool {
        self.nonzero.is_empty()
    }

    pub fn first_bad_step(&self) -> Option<usize> {
        self.nonzero.first().map(|e| e.step)
    }
}

/// Every entry of `F Y_{k+1} - G Y_k`; passes iff all are exactly zero.
pub fn verify_trajectory(f: &RatMatrix, g: &RatMatrix, traj: &Trajectory) -> Result<ResidualReport> {
    if f.shape() != g.shape() {
        return Err(PencilError::DimensionMismatch("F and G differ in shape".into()));
    }
    if traj.samples.is_empty() {
        return Err(PencilError::InvalidInput("trajectory has no samples".into()));
    }
    for (k, y) in traj.samples.iter().enumerate() {
        if y.shape() != (f.cols(), 1) {
            return Err(PencilError::DimensionMismatch(format!(
                "sample {k} has shape {}x{}, expected {}x1",
                y.rows(),
                y.cols(),
                f.cols()
            )));
        }
    }
    let mut nonzero = Vec::new();
    let mut max_abs = Rational::zero();
    for (step, w) in traj.samples.windows(2).enumerate() {
        let r = &(f * &w[1]) - &(g * &w[0]);
        for row in 0..r.rows() {
            let v = &r[(row, 0)];
            if !v.is_zero() {
                if v.abs() > max_abs {
                    max_abs = v.abs();
                }
                nonzero.push(ResidualEntry { step, row, value: v.clone() });
            }
        }
    }
    Ok(ResidualReport { steps_checked: traj.samples.len() - 1, nonzero, max_abs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rank, rat};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_int_rows(rows)
    }

    #[test]
    fn horizon_shapes() {
        let one = RatMatrix::identity(1);
        let sys = build_horizon_system(&one, &one, None, 1);
        let (a, _) = sys.to_dense();
        assert_eq!(a, m(&[&[-1, 1]]));
        assert_eq!(truncated_dimension(&sys), Some(1));
        let sys = build_horizon_system(&one, &one, Some(&one), 1);
        assert_eq!(truncated_dimension(&sys), Some(0));

        let f = m(&[&[1, 0], &[0, 0]]);
        let g = m(&[&[0, 1], &[1, -1]]);
        let sys = build_horizon_system(&f, &g, Some(&RatMatrix::from_int_col(&[1, 1])), 3);
        assert_eq!((sys.rows(), sys.cols()), (3 * 2 + 2, 8));
    }

    #[test]
    fn sparse_ranks_match_dense() {
        let f = m(&[&[1, 2, 0], &[0, 0, 1]]);
        let g = m(&[&[0, 1, 1], &[3, 0, 0]]);
        let sys = build_horizon_system(&f, &g, Some(&RatMatrix::from_int_col(&[1, 0, 2])), 4);
        let (a, b) = sys.to_dense();
        let (ra, raug) = sys.ranks();
        assert_eq!(ra, rank(&a));
        assert_eq!(raug, rank(&RatMatrix::hstack(a.rows(), &[&a, &b])));
    }

    #[test]
    fn classify_regular_example() {
        let f = m(&[&[1, 0], &[0, 0]]);
        let g = m(&[&[0, 1], &[1, -1]]);
        let o = oracle_classify(&f, &g, Some(&RatMatrix::from_int_col(&[1, 1])), 4);
        assert!(o.feasible);
        assert_eq!(o.affine_dim, Some(0));
        let o = oracle_classify(&f, &g, Some(&RatMatrix::from_int_col(&[1, 0])), 4);
        assert!(!o.feasible);
        assert_eq!(o.affine_dim, None);
    }

    #[test]
    fn classify_singular_examples() {
        let (f, g) = (m(&[&[1, 0]]), m(&[&[0, 1]]));
        let o = oracle_classify(&f, &g, Some(&RatMatrix::from_int_col(&[1, 2])), 3);
        assert_eq!(o.affine_dim, Some(3));
        assert_eq!(truncated_dimension(&build_horizon_system(&f, &g, Some(&RatMatrix::from_int_col(&[1, 2])), 3)), Some(3));

        let z = RatMatrix::zeros(1, 1);
        assert_eq!(oracle_classify(&z, &z, Some(&m(&[&[9]])), 2).affine_dim, Some(2));
        let z = RatMatrix::zeros(2, 3);
        let y = RatMatrix::from_int_col(&[1, 2, 3]);
        assert_eq!(oracle_classify(&z, &z, Some(&y), 4).affine_dim, Some(12));
    }

    #[test]
    fn residual_reports() {
        let (f, g) = (m(&[&[1, 0]]), m(&[&[0, 1]]));
        let good = Trajectory {
            k0: 0,
            samples: vec![RatMatrix::from_int_col(&[1, 2]), RatMatrix::from_int_col(&[2, 3])],
            free_inputs_used: Vec::new(),
        };
        assert!(verify_trajectory(&f, &g, &good).unwrap().pass());
        let mut bad = good.clone();
        bad.samples.push(RatMatrix::from_int_col(&[5, 0]));
        let rep = verify_trajectory(&f, &g, &bad).unwrap();
        assert!(!rep.pass());
        assert_eq!(rep.first_bad_step(), Some(1));
        assert_eq!(rep.max_abs, rat(2));
        let single = Trajectory { k0: 0, samples: vec![RatMatrix::zeros(2, 1)], free_inputs_used: Vec::new() };
        assert!(verify_trajectory(&f, &g, &single).unwrap().pass());
        let empty = Trajectory { k0: 0, samples: Vec::new(), free_inputs_used: Vec::new() };
        assert!(verify_trajectory(&f, &g, &empty).is_err());
    }
}
