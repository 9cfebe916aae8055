//! Turn the scalar recurrence `x_{k+1} - x_k = 0` written as an order-2 system
//! with a vanishing leading coefficient into a first-order pencil.

use kronecker_pencil::exact::RatMatrix;
use kronecker_pencil::linearization::{build_companion_pencil, unstack_trajectory, HighOrderSystem};

fn main() -> kronecker_pencil::Result<()> {
    let scalar = |v: i64| RatMatrix::from_int_rows(&[[v]]);
    // A_2 x_{k+2} + A_1 x_{k+1} + A_0 x_k = 0
    let sys = HighOrderSystem::new(
        vec![scalar(-1), scalar(1), scalar(0)],
        0,
        Some(vec![scalar(1), scalar(1)]),
    )?;
    let pencil = build_companion_pencil(&sys);
    println!("order {} with m1 = {}, r1 = {}", sys.order(), sys.m1(), sys.r1());
    println!("F  = {}", pencil.f());
    println!("G  = {}", pencil.g());
    println!("Y0 = {}", pencil.y0().expect("initial data given").tuple_string());

    let samples = vec![RatMatrix::from_int_col(&[1, 1]); 3];
    let xs = unstack_trajectory(&samples, sys.r1())?;
    let shown: Vec<String> = xs.iter().map(RatMatrix::tuple_string).collect();
    println!("unstacked x_k = {}", shown.join(" "));
    Ok(())
}
