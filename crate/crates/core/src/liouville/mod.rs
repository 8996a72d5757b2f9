//! The Liouville function λ(n) = (−1)^Ω(n) and the shifted coefficients
//! a(n) (λ with the n = 1 term removed), evaluated pointwise by trial
//! division or in bulk by a segmented sieve.

mod scan;
mod sieve;

pub use scan::{
    scan, scan_polya, scan_turan, write_lambda_csv, ScanOptions, ScanOutcome, SignScanReport,
};
pub use sieve::{sieve_range, LiouvilleTable, Sieve, SieveConfig};

use crate::error::{Error, Result};

/// Largest argument accepted by scans and the sieve.
pub const MAX_N: u64 = 1 << 63;

/// λ(n) by trial division. Worst case is O(√n) for prime n, which is
/// still interactive up to about 2^50.
pub fn liouville(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::domain("liouville", "n must be at least 1"));
    }
    Ok(if big_omega(n).is_multiple_of(2) { 1 } else { -1 })
}

/// a(1) = 0, a(n) = λ(n) for n ≥ 2.
pub fn a(n: u64) -> Result<i8> {
    match n {
        1 => Ok(0),
        _ => liouville(n),
    }
}

/// Ω(n): number of prime factors of `n` counted with multiplicity.
fn big_omega(mut n: u64) -> u32 {
    let mut count = n.trailing_zeros();
    n >>= count;
    while n.is_multiple_of(3) {
        n /= 3;
        count += 1;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        for p in [d, d + 2] {
            while n.is_multiple_of(p) {
                n /= p;
                count += 1;
            }
        }
        d += 6;
    }
    if n > 1 {
        count += 1;
    }
    count
}
