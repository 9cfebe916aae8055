//! Initial value problems for `F Y_{k+1} = G Y_k`.
//!
//! In the coordinates `Z_k = Q^{-1} Y_k` of a [`PencilDecomposition`] the recurrence
//! splits into five independent parts:
//!
//! * finite: `Z^p_{k+1} = M Z^p_k`,
//! * infinite: `N Z^q_{k+1} = Z^q_k`, which forces `Z^q = 0`,
//! * right singular: one free scalar per nonzero column index per step,
//! * left singular: forces `Z^zeta = 0`,
//! * zero columns: completely free every step.
//!
//! A solution exists iff `Z^q_{k0} = 0` and `Z^zeta_{k0} = 0`, and it is unique iff in
//! addition there are no column minimal indices.

mod epsilon;
mod free;

use serde::{Deserialize, Serialize};

pub use epsilon::{epsilon_subsystem_step, EpsilonStepper};
pub use free::{ExplicitInputs, FreeInputSource, FreeStep, SeededInputs, ZeroInputs};

use crate::error::{PencilError, Result};
use crate::exact::{mat_pow, serde_vector, serde_vectors, RatMatrix};
use crate::structure::PencilDecomposition;

/// `Z = Q^{-1} Y` split along the column partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposedState {
    #[serde(with = "serde_vector")]
    pub z_p: RatMatrix,
    #[serde(with = "serde_vector")]
    pub z_q: RatMatrix,
    #[serde(with = "serde_vector")]
    pub z_eps: RatMatrix,
    #[serde(with = "serde_vector")]
    pub z_zeta: RatMatrix,
    #[serde(with = "serde_vector")]
    pub z_g: RatMatrix,
}

impl DecomposedState {
    pub fn is_consistent(&self) -> bool {
        self.z_q.is_zero() && self.z_zeta.is_zero()
    }

    pub fn assemble(&self) -> RatMatrix {
        RatMatrix::vstack(1, &[&self.z_p, &self.z_q, &self.z_eps, &self.z_zeta, &self.z_g])
    }
}

pub fn decompose_state(dec: &PencilDecomposition, y: &RatMatrix) -> Result<DecomposedState> {
    let n = dec.q.rows();
    if y.shape() != (n, 1) {
        return Err(PencilError::DimensionMismatch(format!(
            "initial vector has shape {}x{}, expected {n}x1",
            y.rows(),
            y.cols()
        )));
    }
    let z = &dec.q_inv * y;
    let part = |r: &std::ops::Range<usize>| z.submatrix(r.clone(), 0..1);
    let c = &dec.col_parts;
    Ok(DecomposedState {
        z_p: part(&c.finite),
        z_q: part(&c.infinite),
        z_eps: part(&c.epsilon),
        z_zeta: part(&c.zeta),
        z_g: part(&c.zero),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SolvabilityTag {
    NoSolution,
    Unique,
    InfinitelyMany,
}

/// The components that rule out a solution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfeasibilityCertificate {
    #[serde(with = "serde_vector")]
    pub z_q: RatMatrix,
    #[serde(with = "serde_vector")]
    pub z_zeta: RatMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolvabilityClass {
    pub tag: SolvabilityTag,
    /// Present exactly when a solution exists.
    pub consistent_z0: Option<DecomposedState>,
    /// Present exactly when no solution exists.
    pub certificate: Option<InfeasibilityCertificate>,
    /// Free scalars per step, `d` (nonzero column indices plus zero columns).
    pub freedom_per_step: usize,
}

pub fn classify_ivp(dec: &PencilDecomposition, y0: &RatMatrix) -> Result<SolvabilityClass> {
    let state = decompose_state(dec, y0)?;
    let d = dec.structure.d();
    if !state.is_consistent() {
        return Ok(SolvabilityClass {
            tag: SolvabilityTag::NoSolution,
            consistent_z0: None,
            certificate: Some(InfeasibilityCertificate { z_q: state.z_q, z_zeta: state.z_zeta }),
            freedom_per_step: d,
        });
    }
    let tag = if d == 0 { SolvabilityTag::Unique } else { SolvabilityTag::InfinitelyMany };
    Ok(SolvabilityClass { tag, consistent_z0: Some(state), certificate: None, freedom_per_step: d })
}

/// `M^j z0` for each offset `j` in `offsets`.
pub fn finite_subsystem_solution(
    m: &RatMatrix,
    z0: &RatMatrix,
    offsets: std::ops::RangeInclusive<u64>,
) -> Vec<RatMatrix> {
    let (start, end) = (*offsets.start(), *offsets.end());
    if start > end {
        return Vec::new();
    }
    let mut out = Vec::with_capacity((end - start + 1) as usize);
    let mut z = &mat_pow(m, start) * z0;
    for j in start..=end {
        if j > start {
            z = m * &z;
        }
        out.push(z.clone());
    }
    out
}

/// The infinite part is zero at every step.
pub fn nilpotent_subsystem_solution(q: usize, len: usize) -> Vec<RatMatrix> {
    vec![RatMatrix::zeros(q, 1); len]
}

/// The left singular part is zero at every step.
pub fn zeta_subsystem_solution(dim: usize, len: usize) -> Vec<RatMatrix> {
    vec![RatMatrix::zeros(dim, 1); len]
}

/// `[Q_p | Q_eps | Q_g]`: `Y0` admits a solution iff it lies in this column span.
pub fn consistent_initial_space(dec: &PencilDecomposition) -> RatMatrix {
    RatMatrix::hstack(dec.q.rows(), &[&dec.q_p(), &dec.q_eps(), &dec.q_g()])
}

/// Samples `Y_{k0}, ..., Y_{k0+K}` plus the free scalars used between them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trajectory {
    pub k0: i64,
    #[serde(with = "serde_vectors")]
    pub samples: Vec<RatMatrix>,
    #[serde(default)]
    pub free_inputs_used: Vec<FreeStep>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Index `k` of the last sample.
    pub fn last_k(&self) -> i64 {
        self.k0 + self.samples.len() as i64 - 1
    }
}

/// `Y_k = Q_p M^{k-k0} Z^p_{k0}` for `k = k0..=k0+steps`.
pub fn solve_unique(dec: &PencilDecomposition, y0: &RatMatrix, k0: i64, steps: usize) -> Result<Trajectory> {
    let class = classify_ivp(dec, y0)?;
    if class.tag != SolvabilityTag::Unique {
        return Err(PencilError::NotUnique);
    }
    let z0 = class.consistent_z0.expect("unique implies consistent");
    let q_p = dec.q_p();
    let samples = finite_subsystem_solution(&dec.m_finite, &z0.z_p, 0..=steps as u64)
        .iter()
        .map(|zp| &q_p * zp)
        .collect();
    Ok(Trajectory { k0, samples, free_inputs_used: Vec::new() })
}

/// Steps every part of the decomposition forward, drawing free scalars from `source`.
pub fn simulate_family(
    dec: &PencilDecomposition,
    y0: &RatMatrix,
    k0: i64,
    steps: usize,
    source: &mut dyn FreeInputSource,
) -> Result<Trajectory> {
    let class = classify_ivp(dec, y0)?;
    let Some(mut z) = class.consistent_z0 else {
        return Err(PencilError::Inconsistent);
    };
    let stepper = EpsilonStepper::new(&dec.blocks.epsilon.f, &dec.blocks.epsilon.g, &dec.q_eps());
    let g = dec.structure.g();
    let mut samples = Vec::with_capacity(steps + 1);
    let mut used = Vec::with_capacity(steps);
    let mut consumed = 0;
    samples.push(y0.clone());
    for _ in 0..steps {
        let eps = free::draw(source, stepper.free_count(), &mut consumed)?;
        let zero = free::draw(source, g, &mut consumed)?;
        z.z_p = &dec.m_finite * &z.z_p;
        z.z_eps = stepper.step(&z.z_eps, &eps)?;
        z.z_g = RatMatrix::column_vector(zero.clone());
        samples.push(&dec.q * &z.assemble());
        used.push(FreeStep { eps, zero });
    }
    Ok(Trajectory { k0, samples, free_inputs_used: used })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::structure::kronecker_decompose;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_int_rows(rows)
    }

    fn regular_example() -> PencilDecomposition {
        kronecker_decompose(&m(&[&[1, 0], &[0, 0]]), &m(&[&[0, 1], &[1, -1]])).unwrap()
    }

    fn residual_free(f: &RatMatrix, g: &RatMatrix, t: &Trajectory) -> bool {
        t.samples.windows(2).all(|w| (&(f * &w[1]) - &(g * &w[0])).is_zero())
    }

    #[test]
    fn classification_examples() {
        let dec = regular_example();
        let c = classify_ivp(&dec, &RatMatrix::from_int_col(&[1, 1])).unwrap();
        assert_eq!(c.tag, SolvabilityTag::Unique);
        assert_eq!(c.freedom_per_step, 0);
        let c = classify_ivp(&dec, &RatMatrix::from_int_col(&[1, 0])).unwrap();
        assert_eq!(c.tag, SolvabilityTag::NoSolution);
        assert!(c.consistent_z0.is_none());
        assert!(!c.certificate.unwrap().z_q.is_zero());

        let dec = kronecker_decompose(&m(&[&[1, 0]]), &m(&[&[0, 1]])).unwrap();
        for y in [[0, 0], [1, 2], [-3, 5]] {
            let c = classify_ivp(&dec, &RatMatrix::from_int_col(&y)).unwrap();
            assert_eq!(c.tag, SolvabilityTag::InfinitelyMany);
            assert_eq!(c.freedom_per_step, 1);
        }
        assert!(classify_ivp(&dec, &RatMatrix::from_int_col(&[1])).is_err());
    }

    #[test]
    fn finite_part_examples() {
        let one = finite_subsystem_solution(&m(&[&[1]]), &m(&[&[6]]), 0..=3);
        assert!(one.iter().all(|z| z == &m(&[&[6]])));
        let geo = finite_subsystem_solution(&m(&[&[2]]), &m(&[&[1]]), 0..=3);
        let vals: Vec<_> = geo.iter().map(|z| z[(0, 0)].clone()).collect();
        assert_eq!(vals, vec![rat(1), rat(2), rat(4), rat(8)]);
        let j = finite_subsystem_solution(&m(&[&[2, 1], &[0, 2]]), &RatMatrix::from_int_col(&[1, 1]), 3..=3);
        assert_eq!(j[0], RatMatrix::from_int_col(&[20, 8]));
    }

    #[test]
    fn forced_zero_parts() {
        assert_eq!(nilpotent_subsystem_solution(0, 2)[0].shape(), (0, 1));
        assert!(nilpotent_subsystem_solution(3, 4).iter().all(|z| z.is_zero() && z.rows() == 3));
        assert!(zeta_subsystem_solution(2, 3).iter().all(RatMatrix::is_zero));
        assert!(zeta_subsystem_solution(0, 1)[0].rows() == 0);
    }

    #[test]
    fn unique_trajectories() {
        let dec = regular_example();
        let t = solve_unique(&dec, &RatMatrix::from_int_col(&[1, 1]), 0, 5).unwrap();
        assert_eq!(t.len(), 6);
        assert!(t.samples.iter().all(|y| y == &RatMatrix::from_int_col(&[1, 1])));
        let z = solve_unique(&dec, &RatMatrix::zeros(2, 1), 0, 3).unwrap();
        assert!(z.samples.iter().all(RatMatrix::is_zero));
        assert_eq!(solve_unique(&dec, &RatMatrix::from_int_col(&[1, 0]), 0, 3), Err(PencilError::NotUnique));

        let mm = m(&[&[1, 2], &[0, 3]]);
        let dec = kronecker_decompose(&RatMatrix::identity(2), &mm).unwrap();
        let y0 = RatMatrix::from_int_col(&[1, -1]);
        let t = solve_unique(&dec, &y0, 4, 3).unwrap();
        for (j, y) in t.samples.iter().enumerate() {
            assert_eq!(y, &(&mat_pow(&mm, j as u64) * &y0));
        }
        assert_eq!(t.last_k(), 7);
    }

    #[test]
    fn right_block_family_shifts() {
        let (f, g) = (m(&[&[1, 0]]), m(&[&[0, 1]]));
        let dec = kronecker_decompose(&f, &g).unwrap();
        let mut src = ExplicitInputs::from_ints(&[3, 4, 5]);
        let t = simulate_family(&dec, &RatMatrix::from_int_col(&[1, 2]), 0, 3, &mut src).unwrap();
        let expected: Vec<_> = [[1, 2], [2, 3], [3, 4], [4, 5]].iter().map(|v| RatMatrix::from_int_col(v)).collect();
        assert_eq!(t.samples, expected);
        assert_eq!(t.free_inputs_used[0].eps, vec![rat(3)]);
        assert!(residual_free(&f, &g, &t));
        let mut short = ExplicitInputs::from_ints(&[3]);
        assert_eq!(
            simulate_family(&dec, &RatMatrix::from_int_col(&[1, 2]), 0, 2, &mut short),
            Err(PencilError::FreeInputsExhausted { consumed: 1 })
        );
    }

    #[test]
    fn zero_pencil_family_is_the_input() {
        let z = RatMatrix::zeros(1, 1);
        let dec = kronecker_decompose(&z, &z).unwrap();
        let mut src = ExplicitInputs::from_ints(&[7, -2]);
        let t = simulate_family(&dec, &m(&[&[5]]), 0, 2, &mut src).unwrap();
        let vals: Vec<_> = t.samples.iter().map(|y| y[(0, 0)].clone()).collect();
        assert_eq!(vals, vec![rat(5), rat(7), rat(-2)]);
        assert_eq!(t.free_inputs_used[1].zero, vec![rat(-2)]);
    }

    #[test]
    fn family_contains_unique_solution() {
        let dec = regular_example();
        let y0 = RatMatrix::from_int_col(&[1, 1]);
        let u = solve_unique(&dec, &y0, 0, 4).unwrap();
        let f = simulate_family(&dec, &y0, 0, 4, &mut SeededInputs::new(3)).unwrap();
        assert_eq!(u.samples, f.samples);
        assert_eq!(
            simulate_family(&dec, &RatMatrix::from_int_col(&[1, 0]), 0, 2, &mut ZeroInputs),
            Err(PencilError::Inconsistent)
        );
    }

    #[test]
    fn consistent_space_examples() {
        let dec = regular_example();
        let basis = consistent_initial_space(&dec);
        assert_eq!(basis.cols(), 1);
        assert_eq!(basis[(0, 0)], basis[(1, 0)]);
        let dec = kronecker_decompose(&RatMatrix::identity(2), &m(&[&[1, 0], &[0, 2]])).unwrap();
        assert_eq!(crate::exact::rank(&consistent_initial_space(&dec)), 2);
        let z = RatMatrix::zeros(2, 2);
        let dec = kronecker_decompose(&z, &z).unwrap();
        assert_eq!(crate::exact::rank(&consistent_initial_space(&dec)), 2);
    }

    #[test]
    fn trajectory_wire_format() {
        let t = Trajectory {
            k0: 2,
            samples: vec![RatMatrix::from_int_col(&[1, 2])],
            free_inputs_used: vec![FreeStep::default()],
        };
        let js = serde_json::to_string(&t).unwrap();
        assert_eq!(serde_json::from_str::<Trajectory>(&js).unwrap(), t);
    }
}
