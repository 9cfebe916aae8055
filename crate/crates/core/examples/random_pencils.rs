//! Generate random structured pencils and check that decomposition recovers
//! the structure, with timing.

use std::time::Instant;

use kronecker_pencil::oracle::{random_spec, random_structured_pencil, SpecLimits};
use kronecker_pencil::structure::kronecker_decompose;

fn main() -> kronecker_pencil::Result<()> {
    let count: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(25);
    let limits = SpecLimits::default();
    let start = Instant::now();
    let mut recovered = 0;
    for seed in 0..count {
        let p = random_structured_pencil(&random_spec(seed, &limits))?;
        let dec = kronecker_decompose(&p.f, &p.g)?;
        if dec.structure == p.truth {
            recovered += 1;
        } else {
            println!("seed {seed}: expected {:?}, got {:?}", p.truth, dec.structure);
        }
    }
    println!("{recovered}/{count} recovered in {:.2?}", start.elapsed());
    Ok(())
}
