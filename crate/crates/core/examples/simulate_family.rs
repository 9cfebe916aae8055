//! Walk a non-unique solution family. A right singular block contributes one
//! free scalar per step, drawn here from an explicit list and from a seed.

use kronecker_pencil::exact::RatMatrix;
use kronecker_pencil::oracle::verify_trajectory;
use kronecker_pencil::solver::{classify_ivp, simulate_family, ExplicitInputs, SeededInputs};
use kronecker_pencil::structure::kronecker_decompose;

fn main() -> kronecker_pencil::Result<()> {
    let f = RatMatrix::from_int_rows(&[[1, 0]]);
    let g = RatMatrix::from_int_rows(&[[0, 1]]);
    let dec = kronecker_decompose(&f, &g)?;
    let y0 = RatMatrix::from_int_col(&[1, 2]);
    let class = classify_ivp(&dec, &y0)?;
    println!("{:?}, {} free scalar per step", class.tag, class.freedom_per_step);

    let mut chosen = ExplicitInputs::from_ints(&[3, 4, 5]);
    let t = simulate_family(&dec, &y0, 0, 3, &mut chosen)?;
    let shown: Vec<String> = t.samples.iter().map(RatMatrix::tuple_string).collect();
    println!("explicit inputs: {}", shown.join(" -> "));

    let t = simulate_family(&dec, &y0, 0, 6, &mut SeededInputs::new(7))?;
    let shown: Vec<String> = t.samples.iter().map(RatMatrix::tuple_string).collect();
    println!("seeded inputs:   {}", shown.join(" -> "));
    println!("residual zero: {}", verify_trajectory(&f, &g, &t)?.pass());
    Ok(())
}
