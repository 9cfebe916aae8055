//! Invariant factors of `sF - G`, their root structure, and the determinant
//! cross-check for a regular pencil.

use kronecker_pencil::exact::RatMatrix;
use kronecker_pencil::invariants::{finite_divisor_report, invariant_factors, PolyMatrix};

fn main() {
    let f = RatMatrix::identity(3);
    let g = RatMatrix::from_int_rows(&[[3, 1, 0], [0, 3, 0], [0, 0, 3]]);
    let factors = invariant_factors(&f, &g);
    for (i, p) in factors.factors().iter().enumerate() {
        println!("f_{} = {}", i + 1, p);
    }
    println!("total degree {}", factors.total_degree());

    let det = PolyMatrix::from_pencil(&f, &g).determinant();
    println!("det(sF - G) = {}", det);
    println!("product matches determinant: {}", factors.product() == det.monic());

    for r in finite_divisor_report(&factors).factors {
        for root in &r.roots {
            println!("{} has root {} with multiplicity {}", r.factor, root.root, root.multiplicity);
        }
    }
}
