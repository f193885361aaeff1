//! Property suites with counts and first counterexamples.

use parabolic::asymptotics::SeedMatrix;
use parabolic::verify::{verify_asymptotics, verify_identities, verify_reciprocity, verify_sums, verify_torsion};

fn main() -> parabolic::Result<()> {
    let mut reports = verify_identities(51, 25);
    reports.push(verify_torsion(25));
    reports.push(verify_sums(25));
    reports.push(verify_reciprocity(25));
    reports.extend(verify_asymptotics(&SeedMatrix::new(3, 2, 4, 3)?)?.suites);
    for r in reports {
        println!(
            "{:<14} checked {:>4} failed {:>3} {}",
            r.suite,
            r.checked,
            r.failed,
            r.first_counterexample.unwrap_or_default()
        );
    }
    Ok(())
}
