//! Recover the Kronecker structure of a scrambled pencil and compare it with
//! the structure it was built from.

use kronecker_pencil::exact::rat;
use kronecker_pencil::oracle::{random_structured_pencil, EigenBlock, StructureSpec};
use kronecker_pencil::structure::{kronecker_decompose, structure_report};

fn main() -> kronecker_pencil::Result<()> {
    let spec = StructureSpec {
        finite: vec![EigenBlock { eigenvalue: rat(2), size: 2 }],
        inf_degrees: vec![2],
        eps_indices: vec![1],
        zeta_indices: vec![1],
        g: 1,
        h: 1,
        seed: 11,
    };
    let pencil = random_structured_pencil(&spec)?;
    println!("scrambled pencil is {}x{}", pencil.f.rows(), pencil.f.cols());
    let dec = kronecker_decompose(&pencil.f, &pencil.g)?;
    let report = structure_report(&dec);
    println!("regularity       {:?}", report.regularity);
    println!("finite size p    {}", report.p);
    println!("infinite degrees {:?}", report.inf_degrees);
    println!("right indices    {:?} (zeros are zero columns)", report.eps);
    println!("left indices     {:?} (zeros are zero rows)", report.zeta);
    println!("zero columns g   {}, zero rows h {}", report.g, report.h);
    println!("M_finite         {}", dec.m_finite);
    println!("matches truth    {}", dec.structure == pencil.truth);
    println!("reconstructs     {}", dec.reconstructs(&pencil.f, &pencil.g));
    Ok(())
}
