//! Condition (H) over all enumerated seeds with d below a bound.

use parabolic::asymptotics::condition_h_sweep;

fn main() -> parabolic::Result<()> {
    let rows = condition_h_sweep(30)?;
    let bad: Vec<_> = rows.iter().filter(|r| !r.ok).collect();
    println!("{} seeds, {} failing", rows.len(), bad.len());
    for r in rows.iter().take(8) {
        println!("b = {} d = {} a = {} c = {}: {}", r.b, r.d, r.a, r.c, r.ok);
    }
    Ok(())
}
