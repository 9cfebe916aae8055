use crate::error::{PencilError, Result};
use crate::exact::{column_echelon_basis, nullspace_basis, solve_linear, RatMatrix, Rational};

/// One-step map of the right singular part: `Z_{k+1} = S Z_k + K c`.
///
/// `F_eps` has full row rank, so `F_eps Z_{k+1} = G_eps Z_k` always has solutions and
/// they differ by `ker F_eps`, one dimension per block. The kernel basis `K` is chosen
/// so that `Q_eps K` is in reduced column echelon form, which makes each free scalar
/// land verbatim on one coordinate of `Q_eps Z_{k+1}`; `S` is chosen so that it adds
/// nothing to those coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonStepper {
    shift: RatMatrix,
    inject: RatMatrix,
    pivots: Vec<usize>,
}

impl EpsilonStepper {
    /// `q_eps` maps the block coordinates back to the ambient space (`I` for a bare block).
    pub fn new(f_eps: &RatMatrix, g_eps: &RatMatrix, q_eps: &RatMatrix) -> Self {
        let n = f_eps.cols();
        let kernel = nullspace_basis(f_eps);
        let s = solve_linear(f_eps, g_eps)
            .expect("right singular part has full row rank")
            .particular;
        if kernel.cols() == 0 {
            return EpsilonStepper { shift: s, inject: RatMatrix::zeros(n, 0), pivots: Vec::new() };
        }
        let image = q_eps * &kernel;
        let (basis, pivots) = column_echelon_basis(&image);
        let change = solve_linear(&image, &basis).expect("echelon basis spans the image").particular;
        let inject = &kernel * &change;
        let qs = &(q_eps * &s).select_rows(&pivots);
        let shift = &s - &(&inject * qs);
        EpsilonStepper { shift, inject, pivots }
    }

    /// Block in its own coordinates.
    pub fn canonical(f_eps: &RatMatrix, g_eps: &RatMatrix) -> Self {
        Self::new(f_eps, g_eps, &RatMatrix::identity(f_eps.cols()))
    }

    /// Free scalars per step: the number of blocks with nonzero index.
    pub fn free_count(&self) -> usize {
        self.inject.cols()
    }

    pub fn dim(&self) -> usize {
        self.shift.rows()
    }

    /// Ambient coordinates that receive the free scalars.
    pub fn pivot_rows(&self) -> &[usize] {
        &self.pivots
    }

    pub fn step(&self, z: &RatMatrix, free: &[Rational]) -> Result<RatMatrix> {
        if z.shape() != (self.dim(), 1) || free.len() != self.free_count() {
            return Err(PencilError::DimensionMismatch(format!(
                "right singular step takes a {}-vector and {} free scalars, got {}x{} and {}",
                self.dim(),
                self.free_count(),
                z.rows(),
                z.cols(),
                free.len()
            )));
        }
        let c = RatMatrix::column_vector(free.to_vec());
        Ok(&(&self.shift * z) + &(&self.inject * &c))
    }
}

/// `Z^eps_{k+1}` from `Z^eps_k` and one free scalar per nonzero-index block.
pub fn epsilon_subsystem_step(stepper: &EpsilonStepper, z: &RatMatrix, free: &[Rational]) -> Result<RatMatrix> {
    stepper.step(z, free)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn l_block(e: usize) -> (RatMatrix, RatMatrix) {
        let f = RatMatrix::from_fn(e, e + 1, |i, j| rat((i == j) as i64));
        let g = RatMatrix::from_fn(e, e + 1, |i, j| rat((j == i + 1) as i64));
        (f, g)
    }

    #[test]
    fn single_block_shifts() {
        let (f, g) = l_block(1);
        let st = EpsilonStepper::canonical(&f, &g);
        let next = epsilon_subsystem_step(&st, &RatMatrix::from_int_col(&[7, 9]), &[rat(4)]).unwrap();
        assert_eq!(next, RatMatrix::from_int_col(&[9, 4]));
    }

    #[test]
    fn longer_block_shifts() {
        let (f, g) = l_block(3);
        let st = EpsilonStepper::canonical(&f, &g);
        let next = st.step(&RatMatrix::from_int_col(&[1, 2, 3, 4]), &[rat(5)]).unwrap();
        assert_eq!(next, RatMatrix::from_int_col(&[2, 3, 4, 5]));
    }

    #[test]
    fn zero_input_keeps_zero() {
        let (f, g) = l_block(2);
        let st = EpsilonStepper::canonical(&f, &g);
        let z = RatMatrix::zeros(3, 1);
        assert!(st.step(&z, &[rat(0)]).unwrap().is_zero());
    }

    #[test]
    fn two_blocks_two_scalars() {
        let (f1, g1) = l_block(1);
        let (f2, g2) = l_block(2);
        let f = RatMatrix::block_diag(&[&f1, &f2]);
        let g = RatMatrix::block_diag(&[&g1, &g2]);
        let st = EpsilonStepper::canonical(&f, &g);
        assert_eq!(st.free_count(), 2);
        let z = RatMatrix::from_int_col(&[1, 2, 3, 4, 5]);
        let next = st.step(&z, &[rat(8), rat(9)]).unwrap();
        assert_eq!(next, RatMatrix::from_int_col(&[2, 8, 4, 5, 9]));
        assert!(st.step(&z, &[rat(8)]).is_err());
    }
}
