//! Finite elementary divisor reporting over `Q`: squarefree decomposition and
//! rational roots. Content without rational roots is reported unfactored.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::poly::RatPolynomial;
use super::smith::InvariantFactorList;
use crate::exact::{denominator_lcm, gcd_all, Rational};

/// Trial division stops here; a larger cofactor is only certified prime below its square.
const TRIAL_LIMIT: u64 = 1_000_000;

/// `[(i, g_i)]` with `p = lc * prod g_i^i`, each `g_i` monic, squarefree and nonconstant.
pub fn squarefree_decomposition(p: &RatPolynomial) -> Vec<(usize, RatPolynomial)> {
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let f = p.monic();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0).expect("gcd divides");
    let c = df.exact_div(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&d);
        let nb = b.exact_div(&a).expect("gcd divides");
        let nc = d.exact_div(&a).expect("gcd divides");
        d = &nc - &nb.derivative();
        b = nb;
        if !a.is_constant() {
            out.push((i, a));
        }
        i += 1;
    }
    out
}

fn prime_factors(n: &BigInt) -> (Vec<BigInt>, bool) {
    let mut n = n.abs();
    let mut primes = Vec::new();
    let mut d = 2u64;
    while d <= TRIAL_LIMIT && BigInt::from(d) * BigInt::from(d) <= n {
        let bd = BigInt::from(d);
        if n.is_multiple_of(&bd) {
            primes.push(bd.clone());
            while n.is_multiple_of(&bd) {
                n /= &bd;
            }
        }
        d += 1;
    }
    let mut certain = true;
    if n > BigInt::one() {
        let limit = BigInt::from(TRIAL_LIMIT) * BigInt::from(TRIAL_LIMIT);
        certain = n < limit;
        primes.push(n);
    }
    (primes, certain)
}

fn divisors(n: &BigInt) -> (Vec<BigInt>, bool) {
    let (primes, certain) = prime_factors(n);
    let mut m = n.abs();
    let mut divs = vec![BigInt::one()];
    for p in primes {
        let mut e = 0;
        while m.is_multiple_of(&p) {
            m /= &p;
            e += 1;
        }
        let mut next = Vec::with_capacity(divs.len() * (e + 1));
        for d in &divs {
            let mut pk = d.clone();
            for _ in 0..=e {
                next.push(pk.clone());
                pk *= &p;
            }
        }
        divs = next;
    }
    (divs, certain)
}

/// Distinct rational roots, ascending, and whether the search was provably complete.
pub fn rational_roots(p: &RatPolynomial) -> (Vec<Rational>, bool) {
    let mut roots = Vec::new();
    if p.is_constant() {
        return (roots, true);
    }
    let lcm = denominator_lcm(p.coeffs().iter());
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let content = gcd_all(ints.iter());
    let mut ints: Vec<BigInt> = ints.into_iter().map(|c| c / &content).collect();
    if ints[0].is_zero() {
        roots.push(Rational::zero());
        let lead = ints.iter().position(|c| !c.is_zero()).expect("nonzero polynomial");
        ints.drain(..lead);
    }
    let mut complete = true;
    if ints.len() > 1 {
        let (num, c1) = divisors(&ints[0]);
        let (den, c2) = divisors(ints.last().expect("nonempty"));
        complete = c1 && c2;
        let reduced = RatPolynomial::new(ints.iter().cloned().map(Rational::from_integer).collect());
        for a in &num {
            for b in &den {
                if !a.gcd(b).is_one() {
                    continue;
                }
                for sign in [1, -1] {
                    let r = Rational::new(a * sign, b.clone());
                    if reduced.eval(&r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    (roots, complete)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRoot {
    #[serde(with = "crate::exact::serde_rational")]
    pub root: Rational,
    pub multiplicity: usize,
}

/// Squarefree content with no rational roots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualFactor {
    pub poly: RatPolynomial,
    pub multiplicity: usize,
    /// Certified irreducible over `Q` (degree at most 3 without rational roots).
    pub irreducible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    pub factor: RatPolynomial,
    pub squarefree: Vec<(usize, RatPolynomial)>,
    pub roots: Vec<RationalRoot>,
    pub residual: Vec<ResidualFactor>,
    /// False when a coefficient was too large to rule out every rational root candidate.
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FiniteDivisorReport {
    pub factors: Vec<FactorReport>,
}

pub fn factor_report(factor: &RatPolynomial) -> FactorReport {
    let squarefree = squarefree_decomposition(factor);
    let mut roots = Vec::new();
    let mut residual = Vec::new();
    let mut complete = true;
    for (mult, g) in &squarefree {
        let (rs, ok) = rational_roots(g);
        complete &= ok;
        let mut rest = g.clone();
        for r in rs {
            rest = rest.exact_div(&RatPolynomial::linear(r.clone())).expect("root divides");
            roots.push(RationalRoot { root: r, multiplicity: *mult });
        }
        if !rest.is_constant() {
            let deg = rest.degree().unwrap_or(0);
            residual.push(ResidualFactor { poly: rest, multiplicity: *mult, irreducible: ok && deg <= 3 });
        }
    }
    roots.sort_by(|a, b| a.root.cmp(&b.root));
    FactorReport { factor: factor.clone(), squarefree, roots, residual, complete }
}

/// One entry per invariant factor of positive degree.
pub fn finite_divisor_report(factors: &InvariantFactorList) -> FiniteDivisorReport {
    FiniteDivisorReport { factors: factors.nontrivial().map(factor_report).collect() }
}

/// Largest multiplicity of `root` across the report, as a convenience for small examples.
pub fn root_multiplicity(report: &FactorReport, root: i64) -> usize {
    report
        .roots
        .iter()
        .filter(|r| r.root.to_i64() == Some(root) && r.root.is_integer())
        .map(|r| r.multiplicity)
        .sum()
}
