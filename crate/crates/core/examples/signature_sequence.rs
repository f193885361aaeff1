//! σ₂ along q_n/p_n with both routes, and its polynomial growth in n.

use parabolic::asymptotics::{polynomiality_check, signature_sequence, SeedMatrix};

fn main() -> parabolic::Result<()> {
    let m = SeedMatrix::new(3, 2, 4, 3)?;
    for row in signature_sequence(&m, 2, &[11, 13, 15, 17])? {
        println!("n = {} ({}/{}): sigma = {} reciprocal {:?}", row.n, row.q, row.p, row.sigma, row.reciprocal);
    }
    let rep = polynomiality_check(&m, 2, 11, 8)?;
    println!("degree {:?}, 4th differences vanish: {}", rep.degree, rep.ok);
    Ok(())
}
