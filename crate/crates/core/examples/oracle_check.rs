//! Brute-force the truncated solution space and compare it with the solver.

use kronecker_pencil::exact::{rat, RatMatrix};
use kronecker_pencil::oracle::{default_horizon, oracle_classify};
use kronecker_pencil::solver::classify_ivp;
use kronecker_pencil::structure::kronecker_decompose;

fn main() -> kronecker_pencil::Result<()> {
    let cases = [
        ("regular", RatMatrix::from_int_rows(&[[1, 0], [0, 0]]), RatMatrix::from_int_rows(&[[1, 0], [-1, 1]])),
        ("right block", RatMatrix::from_int_rows(&[[1, 0]]), RatMatrix::from_int_rows(&[[0, 1]])),
        ("left block", RatMatrix::from_int_rows(&[[1], [0]]), RatMatrix::from_int_rows(&[[0], [1]])),
    ];
    for (name, f, g) in cases {
        let dec = kronecker_decompose(&f, &g)?;
        let k = default_horizon(&f);
        let y0 = RatMatrix::from_fn(f.cols(), 1, |_, _| rat(1));
        let class = classify_ivp(&dec, &y0)?;
        let o = oracle_classify(&f, &g, Some(&y0), k);
        println!(
            "{name:<12} solver {:?}, oracle feasible {} with dimension {:?} over {} steps",
            class.tag, o.feasible, o.affine_dim, o.horizon
        );
    }
    Ok(())
}
