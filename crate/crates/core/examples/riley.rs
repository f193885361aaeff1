//! Riley polynomial, ε-sequence and the reciprocal residues of K(p,q).
//!
//! cargo run --example riley -- 7 3

use parabolic::twobridge::{iota_identity_holds, make_params, riley};

fn main() -> parabolic::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (p, q) = match args[..] {
        [p, q] => (p, q),
        _ => (7, 3),
    };
    let params = make_params(p, q)?;
    println!("K({p},{q}): ell = {}, ell' = {}", params.ell, params.ell_prime);
    println!("eps = {:?}", params.eps);
    println!("riley = {}", riley(&params)?);
    println!("P_(p-2)^2 = -1 mod riley: {}", iota_identity_holds(&params));
    Ok(())
}
