//! Verlinde dimensions of 𝒱_p(S_g).

use parabolic::asymptotics::{verlinde_dim, verlinde_genus_two};

fn main() -> parabolic::Result<()> {
    for p in [3, 5, 7, 11] {
        let dims: Vec<String> = (1..=4).map(|g| verlinde_dim(p, g).map(|d| d.to_string())).collect::<Result<_, _>>()?;
        println!("p = {p}: {}", dims.join(", "));
    }
    println!("p = 607, g = 2: {} (closed form {})", verlinde_dim(607, 2)?, verlinde_genus_two(607));
    Ok(())
}
