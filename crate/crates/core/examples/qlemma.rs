//! Bivariate polynomials Q_M, R_M, S_M: specializations and structure.

use parabolic::asymptotics::{bivariate_polys, qlemma_report, SeedMatrix};

fn main() -> parabolic::Result<()> {
    let m = SeedMatrix::new(1, 0, 2, 1)?;
    let t = bivariate_polys(&m)?;
    println!("Q_M = {}\nR_M = {}\nS_M = {}", t.qm, t.rm, t.sm);
    let rep = qlemma_report(&SeedMatrix::new(3, 2, 4, 3)?)?;
    for c in &rep.clauses {
        println!("{:<16} {}  {}", c.name, if c.ok { "ok" } else { "FAIL" }, c.detail);
    }
    Ok(())
}
