//! Both torsion formulas in V and the inverse torsion sums.

use parabolic::frobenius::build_algebra;
use parabolic::torsion::torsion_report;

fn main() -> parabolic::Result<()> {
    for (p, q) in [(5, 3), (7, 3), (9, 5), (11, 1)] {
        let v = build_algebra(p, q)?;
        let r = torsion_report(&v)?;
        println!(
            "({p},{q}) tau1 match {} tau2 match {} sum 1/tau1 = {} (expected {}) sum 1/tau2 = {}",
            r.tau1_match(),
            r.tau2_match(),
            r.invsum_tau1,
            r.expected_invsum_tau1,
            r.invsum_tau2.map_or("-".into(), |s| s.to_string()),
        );
    }
    Ok(())
}
