//! Random pencils with known Kronecker structure.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{PencilError, Result};
use crate::exact::{rat, serde_rational, RatMatrix, Rational};
use crate::structure::KroneckerStructure;

/// Jordan block `sI - J_size(eigenvalue)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenBlock {
    #[serde(with = "serde_rational")]
    pub eigenvalue: Rational,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct StructureSpec {
    pub finite: Vec<EigenBlock>,
    pub inf_degrees: Vec<usize>,
    /// Column minimal indices; zeros here are folded into `g`.
    pub eps_indices: Vec<usize>,
    /// Row minimal indices; zeros here are folded into `h`.
    pub zeta_indices: Vec<usize>,
    pub g: usize,
    pub h: usize,
    pub seed: u64,
}

impl StructureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.finite.iter().any(|b| b.size == 0) || self.inf_degrees.contains(&0) {
            return Err(PencilError::InvalidInput("block sizes must be positive".into()));
        }
        let empty = self.finite.is_empty()
            && self.inf_degrees.is_empty()
            && self.eps_indices.is_empty()
            && self.zeta_indices.is_empty()
            && self.g == 0
            && self.h == 0;
        if empty {
            return Err(PencilError::InvalidInput("structure spec has no blocks".into()));
        }
        Ok(())
    }

    pub fn ground_truth(&self) -> KroneckerStructure {
        let p = self.finite.iter().map(|b| b.size).sum();
        let mut eps = self.eps_indices.clone();
        eps.extend(std::iter::repeat_n(0, self.g));
        let mut zeta = self.zeta_indices.clone();
        zeta.extend(std::iter::repeat_n(0, self.h));
        KroneckerStructure::new(p, self.inf_degrees.clone(), eps, zeta)
    }
}

/// Block diagonal canonical pencil `(F, G)` realizing `spec`, in the order finite,
/// infinite, `L_eps`, `L_zeta^T`, zero.
pub fn canonical_pencil(spec: &StructureSpec) -> (RatMatrix, RatMatrix) {
    let mut fs = Vec::new();
    let mut gs = Vec::new();
    for b in &spec.finite {
        let n = b.size;
        fs.push(RatMatrix::identity(n));
        gs.push(RatMatrix::from_fn(n, n, |i, j| {
            if i == j {
                b.eigenvalue.clone()
            } else {
                rat((j == i + 1) as i64)
            }
        }));
    }
    for &q in &spec.inf_degrees {
        fs.push(RatMatrix::from_fn(q, q, |i, j| rat((j == i + 1) as i64)));
        gs.push(RatMatrix::identity(q));
    }
    for &e in &spec.eps_indices {
        fs.push(RatMatrix::from_fn(e, e + 1, |i, j| rat((i == j) as i64)));
        gs.push(RatMatrix::from_fn(e, e + 1, |i, j| rat((j == i + 1) as i64)));
    }
    for &z in &spec.zeta_indices {
        fs.push(RatMatrix::from_fn(z + 1, z, |i, j| rat((i == j) as i64)));
        gs.push(RatMatrix::from_fn(z + 1, z, |i, j| rat((i == j + 1) as i64)));
    }
    let zero = RatMatrix::zeros(spec.h, spec.g);
    fs.push(zero.clone());
    gs.push(zero);
    let fr: Vec<&RatMatrix> = fs.iter().collect();
    let gr: Vec<&RatMatrix> = gs.iter().collect();
    (RatMatrix::block_diag(&fr), RatMatrix::block_diag(&gr))
}

/// Product of random elementary integer operations: `row_i += c row_j` with
/// `c` in `[-3, 3]`, and swaps. The determinant is `+-1`.
fn unimodular(n: usize, rng: &mut ChaCha8Rng) -> RatMatrix {
    let mut u = RatMatrix::identity(n);
    if n < 2 {
        return u;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        if rng.gen_bool(0.2) {
            u.swap_rows(i, j);
            continue;
        }
        let c = rat(*[-3, -2, -1, 1, 2, 3].choose(rng).expect("nonempty"));
        for col in 0..n {
            let v = &u[(j, col)] * &c;
            u[(i, col)] += v;
        }
    }
    u
}

/// `(U F V, U G V, U, V)` with fresh unimodular `U`, `V`.
pub fn scramble(f: &RatMatrix, g: &RatMatrix, seed: u64) -> (RatMatrix, RatMatrix, RatMatrix, RatMatrix) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = unimodular(f.rows(), &mut rng);
    let v = unimodular(f.cols(), &mut rng);
    let sf = &(&u * f) * &v;
    let sg = &(&u * g) * &v;
    (sf, sg, u, v)
}

#[derive(Debug, Clone)]
pub struct GeneratedPencil {
    pub f: RatMatrix,
    pub g: RatMatrix,
    pub truth: KroneckerStructure,
    pub left: RatMatrix,
    pub right: RatMatrix,
    pub spec: StructureSpec,
}

pub fn random_structured_pencil(spec: &StructureSpec) -> Result<GeneratedPencil> {
    spec.validate()?;
    let (cf, cg) = canonical_pencil(spec);
    let (f, g, left, right) = scramble(&cf, &cg, spec.seed);
    Ok(GeneratedPencil { f, g, truth: spec.ground_truth(), left, right, spec: spec.clone() })
}

/// Bounds for [`random_spec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpecLimits {
    pub max_rows: usize,
    pub max_cols: usize,
    /// Number of Jordan blocks and their largest size.
    pub max_eigen_blocks: usize,
    pub max_jordan_size: usize,
    pub max_inf_blocks: usize,
    pub max_inf_degree: usize,
    pub max_singular_blocks: usize,
    pub max_minimal_index: usize,
    pub max_zero: usize,
    /// Eigenvalues are drawn from `-range..=range`.
    pub eigen_range: i64,
}

impl Default for SpecLimits {
    fn default() -> Self {
        SpecLimits {
            max_rows: 12,
            max_cols: 12,
            max_eigen_blocks: 3,
            max_jordan_size: 2,
            max_inf_blocks: 2,
            max_inf_degree: 3,
            max_singular_blocks: 2,
            max_minimal_index: 3,
            max_zero: 2,
            eigen_range: 3,
        }
    }
}

impl SpecLimits {
    /// Square pencils without singular or zero parts.
    pub fn regular(max_size: usize) -> Self {
        SpecLimits {
            max_rows: max_size,
            max_cols: max_size,
            max_singular_blocks: 0,
            max_zero: 0,
            ..Self::default()
        }
    }
}

/// Draws a nonempty spec within `limits` deterministically from `seed`.
pub fn random_spec(seed: u64, limits: &SpecLimits) -> StructureSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_cafe);
    loop {
        let nfin = rng.gen_range(0..=limits.max_eigen_blocks);
        let finite = (0..nfin)
            .map(|_| EigenBlock {
                eigenvalue: rat(rng.gen_range(-limits.eigen_range..=limits.eigen_range)),
                size: rng.gen_range(1..=limits.max_jordan_size.max(1)),
            })
            .collect();
        let ninf = rng.gen_range(0..=limits.max_inf_blocks);
        let inf_degrees = (0..ninf).map(|_| rng.gen_range(1..=limits.max_inf_degree.max(1))).collect();
        let neps = rng.gen_range(0..=limits.max_singular_blocks);
        let eps_indices = (0..neps).map(|_| rng.gen_range(1..=limits.max_minimal_index.max(1))).collect();
        let nzeta = rng.gen_range(0..=limits.max_singular_blocks);
        let zeta_indices = (0..nzeta).map(|_| rng.gen_range(1..=limits.max_minimal_index.max(1))).collect();
        let spec = StructureSpec {
            finite,
            inf_degrees,
            eps_indices,
            zeta_indices,
            g: rng.gen_range(0..=limits.max_zero),
            h: rng.gen_range(0..=limits.max_zero),
            seed: rng.gen(),
        };
        let (r, c) = spec.ground_truth().pencil_shape();
        if spec.validate().is_ok() && r <= limits.max_rows && c <= limits.max_cols && r + c > 0 {
            return spec;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rank;

    #[test]
    fn single_eigenvalue() {
        let spec = StructureSpec { finite: vec![EigenBlock { eigenvalue: rat(2), size: 1 }], seed: 1, ..Default::default() };
        let p = random_structured_pencil(&spec).unwrap();
        assert_eq!(p.f.shape(), (1, 1));
        // Strictly equivalent to s - 2: G = 2 F up to the +-1 scramble.
        assert_eq!(p.g, p.f.scale(&rat(2)));
    }

    #[test]
    fn singular_pair_shapes() {
        let spec = StructureSpec { eps_indices: vec![1], zeta_indices: vec![1], seed: 4, ..Default::default() };
        let p = random_structured_pencil(&spec).unwrap();
        assert_eq!(p.f.shape(), (3, 3));
        assert_eq!(p.truth.d(), 1);
        assert_eq!(p.truth.t(), 1);
    }

    #[test]
    fn zero_core() {
        let spec = StructureSpec { g: 2, h: 1, seed: 9, ..Default::default() };
        let p = random_structured_pencil(&spec).unwrap();
        assert_eq!(p.f.shape(), (1, 2));
        assert!(p.f.is_zero() && p.g.is_zero());
        assert_eq!((p.truth.g(), p.truth.h()), (2, 1));
    }

    #[test]
    fn scrambles_are_unimodular() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..6 {
            let u = unimodular(n, &mut rng);
            assert_eq!(rank(&u), n);
            assert!(crate::exact::invert(&u).unwrap().entries().iter().all(|x| x.is_integer()));
        }
    }

    #[test]
    fn empty_spec_is_rejected() {
        assert!(random_structured_pencil(&StructureSpec::default()).is_err());
    }

    #[test]
    fn random_specs_respect_limits() {
        let lim = SpecLimits::default();
        for seed in 0..50 {
            let s = random_spec(seed, &lim);
            let (r, c) = s.ground_truth().pencil_shape();
            assert!(r <= 12 && c <= 12);
            assert!(s.finite.len() <= 3 && s.g <= 2 && s.h <= 2);
        }
        assert_eq!(random_spec(5, &lim), random_spec(5, &lim));
    }
}
