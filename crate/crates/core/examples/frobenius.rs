//! The Frobenius algebra V(p,q): Ω, ι, the pairing and signatures σ_g.

use parabolic::frobenius::build_algebra;

fn main() -> parabolic::Result<()> {
    let v = build_algebra(9, 5)?;
    println!("dim V = {}", v.dim());
    println!("omega = {}", v.omega());
    println!("iota  = {}", v.iota());
    println!("eta diagonal = {:?}", v.eta_diagonal());
    for g in 1..=5 {
        println!("sigma_{g} = {}", v.signature(g)?);
    }
    println!("colored sigma_2(1,1) = {}", v.colored_signature(2, &[1, 1])?);
    Ok(())
}
