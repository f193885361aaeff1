//! The limit algebra W_M of a seed matrix and its traces.

use parabolic::asymptotics::{alpha_sequence, LimitAlgebra, SeedMatrix};

fn main() -> parabolic::Result<()> {
    let m = SeedMatrix::new(3, 2, 4, 3)?;
    let w = LimitAlgebra::new(&m)?;
    println!("M = {m}, alpha = {:?}", alpha_sequence(&m));
    println!("H1 = {}\nH2 = {}\nH3 = {}", w.h.h1, w.h.h2, w.h.h3);
    println!("Omega_W = {}", w.omega_w);
    for g in 2..=6 {
        println!("g = {g}: Tr = {}, limit = {}", w.trace(g)?, w.limit_ratio(g)?);
    }
    Ok(())
}
