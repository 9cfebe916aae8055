//! First-order pencil form of `A_n X_{k+n} + ... + A_1 X_{k+1} + A_0 X_k = 0`.
//!
//! With `Y_k = [X_k; X_{k+1}; ...; X_{k+n-1}]` the recurrence becomes `F Y_{k+1} = G Y_k`
//! where `F = diag(I, ..., I, A_n)` and `G` is the block companion matrix whose last
//! block row is `[-A_0, ..., -A_{n-1}]`. Each `A_i` is `m1 x r1` and each `X_k` lives in
//! `Q^{r1}`, so `F, G` are `((n-1) r1 + m1) x (n r1)`.

use crate::error::{PencilError, Result};
use crate::exact::RatMatrix;

/// Order-`n` homogeneous matrix difference equation with initial data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HighOrderSystem {
    order: usize,
    m1: usize,
    r1: usize,
    coeffs: Vec<RatMatrix>,
    k0: i64,
    initial: Option<Vec<RatMatrix>>,
}

impl HighOrderSystem {
    /// `coeffs` is `A_0, ..., A_n`; `initial`, when given, is `X_{k0}, ..., X_{k0+n-1}`.
    pub fn new(coeffs: Vec<RatMatrix>, k0: i64, initial: Option<Vec<RatMatrix>>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(PencilError::DimensionMismatch(format!(
                "need at least two coefficients A_0, A_1, got {}",
                coeffs.len()
            )));
        }
        let order = coeffs.len() - 1;
        let (m1, r1) = coeffs[0].shape();
        for (i, a) in coeffs.iter().enumerate() {
            if a.shape() != (m1, r1) {
                return Err(PencilError::DimensionMismatch(format!(
                    "coefficient A_{i} is {}x{}, expected {m1}x{r1}",
                    a.rows(),
                    a.cols()
                )));
            }
        }
        if let Some(xs) = &initial {
            if xs.len() != order {
                return Err(PencilError::DimensionMismatch(format!(
                    "{} initial vectors for an order-{order} system",
                    xs.len()
                )));
            }
            for (i, x) in xs.iter().enumerate() {
                if x.shape() != (r1, 1) {
                    return Err(PencilError::DimensionMismatch(format!(
                        "initial vector X_(k0+{i}) has shape {}x{}, expected {r1}x1",
                        x.rows(),
                        x.cols()
                    )));
                }
            }
        }
        Ok(HighOrderSystem { order, m1, r1, coeffs, k0, initial })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn m1(&self) -> usize {
        self.m1
    }

    pub fn r1(&self) -> usize {
        self.r1
    }

    pub fn coeffs(&self) -> &[RatMatrix] {
        &self.coeffs
    }

    pub fn k0(&self) -> i64 {
        self.k0
    }

    pub fn initial(&self) -> Option<&[RatMatrix]> {
        self.initial.as_deref()
    }
}

/// First-order descriptor system `F Y_{k+1} = G Y_k`, optionally with `Y_{k0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PencilSystem {
    f: RatMatrix,
    g: RatMatrix,
    k0: i64,
    y0: Option<RatMatrix>,
}

impl PencilSystem {
    pub fn new(f: RatMatrix, g: RatMatrix, k0: i64, y0: Option<RatMatrix>) -> Result<Self> {
        if f.shape() != g.shape() {
            return Err(PencilError::DimensionMismatch(format!(
                "F is {}x{} but G is {}x{}",
                f.rows(),
                f.cols(),
                g.rows(),
                g.cols()
            )));
        }
        if let Some(y) = &y0 {
            if y.shape() != (f.cols(), 1) {
                return Err(PencilError::DimensionMismatch(format!(
                    "Y0 has shape {}x{}, expected {}x1",
                    y.rows(),
                    y.cols(),
                    f.cols()
                )));
            }
        }
        Ok(PencilSystem { f, g, k0, y0 })
    }

    pub fn f(&self) -> &RatMatrix {
        &self.f
    }

    pub fn g(&self) -> &RatMatrix {
        &self.g
    }

    pub fn k0(&self) -> i64 {
        self.k0
    }

    pub fn y0(&self) -> Option<&RatMatrix> {
        self.y0.as_ref()
    }

    pub fn with_k0(mut self, k0: i64) -> Self {
        self.k0 = k0;
        self
    }
}

pub fn build_companion_pencil(sys: &HighOrderSystem) -> PencilSystem {
    let n = sys.order;
    let (m1, r1) = (sys.m1, sys.r1);
    let rows = (n - 1) * r1 + m1;
    let cols = n * r1;
    let mut f = RatMatrix::zeros(rows, cols);
    let mut g = RatMatrix::zeros(rows, cols);
    let eye = RatMatrix::identity(r1);
    for b in 0..n - 1 {
        f.set_block(b * r1, b * r1, &eye);
        g.set_block(b * r1, (b + 1) * r1, &eye);
    }
    let last = (n - 1) * r1;
    f.set_block(last, (n - 1) * r1, &sys.coeffs[n]);
    for (i, a) in sys.coeffs[..n].iter().enumerate() {
        g.set_block(last, i * r1, &-a);
    }
    let y0 = sys.initial.as_ref().map(|_| stack_initial(sys).expect("initial present"));
    PencilSystem { f, g, k0: sys.k0, y0 }
}

/// Vertical concatenation `[X_{k0}; ...; X_{k0+n-1}]`.
pub fn stack_initial(sys: &HighOrderSystem) -> Result<RatMatrix> {
    let xs = sys
        .initial
        .as_ref()
        .ok_or_else(|| PencilError::InvalidInput("system has no initial conditions".into()))?;
    let parts: Vec<&RatMatrix> = xs.iter().collect();
    Ok(RatMatrix::vstack(1, &parts))
}

/// Recovers `X_{k0}, ..., X_{k0+K+n-1}` from stacked samples `Y_{k0}, ..., Y_{k0+K}`.
///
/// `X_k` is the first block of `Y_k`; the remaining blocks of the last sample supply the
/// tail. Overlapping blocks must agree exactly.
pub fn unstack_trajectory(samples: &[RatMatrix], r1: usize) -> Result<Vec<RatMatrix>> {
    let Some(first) = samples.first() else {
        return Ok(Vec::new());
    };
    let dim = first.rows();
    if r1 == 0 || dim % r1 != 0 {
        return Err(PencilError::DimensionMismatch(format!(
            "sample dimension {dim} is not a multiple of block size {r1}"
        )));
    }
    let n = dim / r1;
    let block = |y: &RatMatrix, i: usize| y.submatrix(i * r1..(i + 1) * r1, 0..1);
    for y in samples {
        if y.shape() != (dim, 1) {
            return Err(PencilError::DimensionMismatch(format!(
                "sample has shape {}x{}, expected {dim}x1",
                y.rows(),
                y.cols()
            )));
        }
    }
    for (step, pair) in samples.windows(2).enumerate() {
        for i in 0..n - 1 {
            if block(&pair[0], i + 1) != block(&pair[1], i) {
                return Err(PencilError::InconsistentStacking { step, block: i + 1 });
            }
        }
    }
    let mut xs: Vec<RatMatrix> = samples.iter().map(|y| block(y, 0)).collect();
    let last = samples.last().expect("nonempty");
    xs.extend((1..n).map(|i| block(last, i)));
    Ok(xs)
}

/// Inverse of [`unstack_trajectory`]: windows of `order` consecutive `X` vectors.
pub fn restack_trajectory(xs: &[RatMatrix], order: usize) -> Vec<RatMatrix> {
    if order == 0 || xs.len() < order {
        return Vec::new();
    }
    xs.windows(order)
        .map(|w| {
            let parts: Vec<&RatMatrix> = w.iter().collect();
            RatMatrix::vstack(1, &parts)
        })
        .collect()
}
