//! Polynomial invariants of `sF - G` over `Q[s]`.

mod divisors;
mod poly;
mod smith;

pub use divisors::{
    factor_report, finite_divisor_report, rational_roots, root_multiplicity, squarefree_decomposition,
    FactorReport, FiniteDivisorReport, RationalRoot, ResidualFactor,
};
pub use poly::{PolyMatrix, RatPolynomial};
pub use smith::{invariant_factors, smith_form, InvariantFactorList, SmithForm};
