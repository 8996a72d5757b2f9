//! λ(n) over a window far from the origin, checked against trial division.
use liouville_zeta::liouville::{liouville, Sieve, SieveConfig};

fn main() -> liouville_zeta::Result<()> {
    let lo = 1_000_000_000_000u64;
    let hi = lo + 100_000;
    let table = Sieve::new(SieveConfig::default())?.table(lo, hi)?;
    let sum: i64 = table.values().iter().map(|&v| v as i64).sum();
    println!("sum of λ(n) over [{lo}, {hi}) = {sum}");
    for n in (lo..hi).step_by(9973).take(5) {
        println!("λ({n}) = {:+} (trial division {:+})", table.get(n).unwrap(), liouville(n)?);
    }
    Ok(())
}
