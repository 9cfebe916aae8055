//! Classify an initial value problem and compute its unique solution.

use kronecker_pencil::exact::RatMatrix;
use kronecker_pencil::oracle::verify_trajectory;
use kronecker_pencil::solver::{classify_ivp, solve_unique};
use kronecker_pencil::structure::kronecker_decompose;

fn main() -> kronecker_pencil::Result<()> {
    // x_{k+1} = x_k coupled with the algebraic constraint x = y
    let f = RatMatrix::from_int_rows(&[[1, 0], [0, 0]]);
    let g = RatMatrix::from_int_rows(&[[1, 0], [-1, 1]]);
    let dec = kronecker_decompose(&f, &g)?;

    for y0 in [RatMatrix::from_int_col(&[3, 3]), RatMatrix::from_int_col(&[3, 0])] {
        let class = classify_ivp(&dec, &y0)?;
        println!("Y0 = {} is {:?}", y0.tuple_string(), class.tag);
        if let Some(cert) = &class.certificate {
            println!("  blocked by z_q = {}", cert.z_q.tuple_string());
            continue;
        }
        let t = solve_unique(&dec, &y0, 0, 5)?;
        for (k, y) in t.samples.iter().enumerate() {
            println!("  Y[{}] = {}", t.k0 + k as i64, y.tuple_string());
        }
        println!("  residual zero: {}", verify_trajectory(&f, &g, &t)?.pass());
    }
    Ok(())
}
