//! How far L_x(ξ) stays below 1.
use liouville_zeta::lab::explore_condition_r;

fn main() -> liouville_zeta::Result<()> {
    for x in [1_000, 100_000, 10_000_000] {
        let r = explore_condition_r(x)?;
        println!(
            "x ≤ {x:>9}: max L = {:.6} at {}, 1 − max = {:.6}, upper-half max = {:.6}",
            r.max, r.argmax, r.implied_r, r.upper_half_max
        );
    }
    Ok(())
}
