//! The isomorphism V(p,q) ≅ V(p,ℓ) and how ι, 𝒬_{p−2} and Ω transform.

use parabolic::frobenius::build_algebra;
use parabolic::torsion::{cusp_shape, reciprocity_in};

fn main() -> parabolic::Result<()> {
    for (p, q) in [(5, 3), (7, 3), (9, 5), (13, 5)] {
        let v = build_algebra(p, q)?;
        let r = reciprocity_in(&v)?;
        println!(
            "({p},{q}) ell = {} class {:+}: ring hom {} inverse {} cusp {} omega literal {} signed {}",
            r.ell, r.ell_class, r.ring_hom, r.inverse, r.cusp, r.omega_literal, r.omega_signed
        );
        println!("    cusp shape = {}", cusp_shape(&v)?);
    }
    Ok(())
}
