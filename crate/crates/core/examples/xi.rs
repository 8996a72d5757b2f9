//! The mean-value exponents ξ(n) between 1/2 and 1.
use liouville_zeta::xi::{check_monotone_limit, log_grid, XiSequence};

fn main() -> liouville_zeta::Result<()> {
    let seq = XiSequence::half_one();
    for n in log_grid(1_000_000_000, 1) {
        println!("ξ({n:>10}) = {:.12}   residual {:+.1e}", seq.xi(n)?, seq.residual(n)?);
    }
    let m = check_monotone_limit(&seq, 1_000_000)?;
    println!("strictly decreasing on [2, 10^6]: {}; ξ(10^6) − 1/2 = {:.6}", m.monotone, m.gap);
    Ok(())
}
