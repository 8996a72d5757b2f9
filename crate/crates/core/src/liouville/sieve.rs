use rayon::prelude::*;

use super::MAX_N;
use crate::error::{Error, Result};

/// Base primes are held in a plain byte sieve, which caps the upper end of
/// any sieved range at 2^56 (base primes up to 2^28).
pub const MAX_SIEVE_HI: u64 = 1 << 56;

#[derive(Debug, Clone)]
pub struct SieveConfig {
    /// Integers per segment.
    pub segment_size: usize,
    /// Worker threads; `None` uses the ambient rayon pool.
    pub workers: Option<usize>,
    /// Largest `hi - lo` that [`Sieve::table`] will materialize.
    pub max_table_len: u64,
}

impl Default for SieveConfig {
    fn default() -> Self {
        Self {
            segment_size: 1 << 16,
            workers: None,
            max_table_len: 1 << 28,
        }
    }
}

/// λ(n) for every n in `[lo, hi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiouvilleTable {
    lo: u64,
    hi: u64,
    values: Vec<i8>,
}

impl LiouvilleTable {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn get(&self, n: u64) -> Option<i8> {
        if n < self.lo || n >= self.hi {
            return None;
        }
        Some(self.values[(n - self.lo) as usize])
    }

    /// a(n): λ(n), except a(1) = 0.
    pub fn a(&self, n: u64) -> Option<i8> {
        if n == 1 {
            return self.get(1).map(|_| 0);
        }
        self.get(n)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, i8)> + '_ {
        (self.lo..).zip(self.values.iter().copied())
    }
}

/// Segmented sieve for λ over ranges that may be far larger than memory.
///
/// Each segment `[a, b)` is processed independently: for every base prime
/// `p ≤ √(b−1)` and every power `p^k < b`, the multiples of `p^k` get their
/// parity flipped and their smooth part multiplied by `p`. Whatever is left
/// after the base primes is a single prime above `√(b−1)`, detected by the
/// smooth part falling short of `n`.
#[derive(Debug, Clone)]
pub struct Sieve {
    config: SieveConfig,
}

impl Sieve {
    pub fn new(config: SieveConfig) -> Result<Self> {
        if config.segment_size == 0 {
            return Err(Error::InvalidParams("segment size must be positive".into()));
        }
        if config.workers == Some(0) {
            return Err(Error::InvalidParams("worker count must be positive".into()));
        }
        Ok(Self { config })
    }

    pub fn config(&self) -> &SieveConfig {
        &self.config
    }

    /// Materializes λ over `[lo, hi)`.
    pub fn table(&self, lo: u64, hi: u64) -> Result<LiouvilleTable> {
        check_range(lo, hi)?;
        let len = hi - lo;
        if len > self.config.max_table_len {
            return Err(Error::Capacity {
                requested: len,
                budget: self.config.max_table_len,
            });
        }
        let mut values = Vec::with_capacity(len as usize);
        self.for_each_segment(lo, hi, 0, |_, _, seg| {
            values.extend_from_slice(seg);
            Ok(())
        })?;
        Ok(LiouvilleTable { lo, hi, values })
    }

    /// Number of segments covering `[lo, hi)`.
    pub fn segment_count(&self, lo: u64, hi: u64) -> u64 {
        (hi - lo).div_ceil(self.config.segment_size as u64)
    }

    /// Streams λ over `[lo, hi)` segment by segment, starting at segment
    /// index `first_segment`. Segments are sieved in parallel batches but
    /// handed to `visit` strictly in index order.
    pub fn for_each_segment<F>(&self, lo: u64, hi: u64, first_segment: u64, mut visit: F) -> Result<()>
    where
        F: FnMut(u64, u64, &[i8]) -> Result<()>,
    {
        check_range(lo, hi)?;
        let base = base_primes(isqrt(hi - 1));
        let seg = self.config.segment_size as u64;
        let total = self.segment_count(lo, hi);
        let workers = self.config.workers.unwrap_or_else(rayon::current_num_threads);
        let batch = (workers as u64 * 4).max(1);
        let bounds = |k: u64| {
            let a = lo + k * seg;
            (a, (a + seg).min(hi))
        };
        let pool = match self.config.workers {
            Some(n) => Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| Error::InvalidParams(e.to_string()))?,
            ),
            None => None,
        };
        let mut k = first_segment;
        while k < total {
            let end = (k + batch).min(total);
            let sieve_batch = || -> Vec<Vec<i8>> {
                (k..end)
                    .into_par_iter()
                    .map(|i| {
                        let (a, b) = bounds(i);
                        sieve_segment(&base, a, b)
                    })
                    .collect()
            };
            let segments = match &pool {
                Some(p) => p.install(sieve_batch),
                None => sieve_batch(),
            };
            for (i, values) in (k..end).zip(&segments) {
                visit(i, bounds(i).0, values)?;
            }
            k = end;
        }
        Ok(())
    }
}

/// λ over `[lo, hi)` with the default configuration.
pub fn sieve_range(lo: u64, hi: u64) -> Result<LiouvilleTable> {
    Sieve::new(SieveConfig::default())?.table(lo, hi)
}

fn check_range(lo: u64, hi: u64) -> Result<()> {
    if lo == 0 || hi <= lo {
        return Err(Error::domain("sieve_range", format!("need 1 <= lo < hi, got [{lo}, {hi})")));
    }
    if hi > MAX_N {
        return Err(Error::domain("sieve_range", "hi above 2^63"));
    }
    if hi > MAX_SIEVE_HI {
        return Err(Error::Capacity {
            requested: isqrt(hi - 1),
            budget: isqrt(MAX_SIEVE_HI),
        });
    }
    Ok(())
}

pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|v| v > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

fn base_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

fn sieve_segment(base: &[u64], a: u64, b: u64) -> Vec<i8> {
    let len = (b - a) as usize;
    let mut parity = vec![0u8; len];
    let mut smooth = vec![1u64; len];
    let last = b - 1;
    for &p in base {
        if p > last {
            break;
        }
        let mut pk = p;
        loop {
            let mut m = a.div_ceil(pk) * pk;
            while m < b {
                let i = (m - a) as usize;
                parity[i] ^= 1;
                smooth[i] *= p;
                m += pk;
            }
            match pk.checked_mul(p) {
                Some(next) if next <= last => pk = next,
                _ => break,
            }
        }
    }
    (a..b)
        .zip(parity.iter().zip(&smooth))
        .map(|(n, (&odd, &sm))| {
            let odd = odd ^ u8::from(sm != n);
            if odd == 1 {
                -1
            } else {
                1
            }
        })
        .collect()
}
