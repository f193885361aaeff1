//! σ_g/dim 𝒱_p(S_g) against the limit value.
//!
//! cargo run --release --example ratio_table -- 11 21 31 51

use parabolic::asymptotics::{ratio_table, SeedMatrix};

fn main() -> parabolic::Result<()> {
    let mut ns: Vec<i64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    if ns.is_empty() {
        ns = vec![11, 21, 31, 41, 51];
    }
    let m = SeedMatrix::new(3, 2, 4, 3)?;
    for r in ratio_table(&m, 2, &ns)? {
        println!("n = {:>3} p = {:>3}: sigma = {} dim = {} rel. error {:.4}", r.n, r.p, r.sigma, r.dim, r.rel_error);
    }
    Ok(())
}
