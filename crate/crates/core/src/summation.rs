//! Compensated accumulation and deterministic block reductions.
//!
//! All long sums in the crate go through [`Compensated`] (Neumaier's variant
//! of Kahan summation, built on the TwoSum error-free transform). Parallel
//! reductions split the index range into blocks of a fixed size that does not
//! depend on the worker count, and the per-block partial sums are combined in
//! block order, so results are bit-identical for any number of threads.

use std::iter::Sum;
use std::ops::AddAssign;

use num_complex::Complex64;
use rayon::prelude::*;

/// Block length used by [`block_sum`] and [`block_sum_complex`].
pub const REDUCTION_BLOCK: usize = 1 << 14;

/// Error-free transform: `a + b = s + e` exactly.
#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Running sum with a second word carrying the accumulated rounding error.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Compensated {
    sum: f64,
    comp: f64,
}

impl Compensated {
    pub const fn new() -> Self {
        Self { sum: 0.0, comp: 0.0 }
    }

    /// Rebuilds an accumulator from its two words, e.g. after a checkpoint.
    pub const fn from_parts(sum: f64, comp: f64) -> Self {
        Self { sum, comp }
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let (s, e) = two_sum(self.sum, x);
        self.sum = s;
        self.comp += e;
    }

    pub fn merge(&mut self, other: &Compensated) {
        self.add(other.sum);
        self.comp += other.comp;
    }

    /// Best estimate of the exact sum.
    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    pub fn parts(&self) -> (f64, f64) {
        (self.sum, self.comp)
    }
}

impl AddAssign<f64> for Compensated {
    fn add_assign(&mut self, x: f64) {
        self.add(x);
    }
}

impl Sum<f64> for Compensated {
    fn sum<I: Iterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Compensated::new();
        iter.for_each(|x| acc.add(x));
        acc
    }
}

/// Compensated sum of complex terms, one accumulator per component.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedComplex {
    re: Compensated,
    im: Compensated,
}

impl CompensatedComplex {
    pub const fn new() -> Self {
        Self {
            re: Compensated::new(),
            im: Compensated::new(),
        }
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn merge(&mut self, other: &CompensatedComplex) {
        self.re.merge(&other.re);
        self.im.merge(&other.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Sums `term(i)` for `i` in `lo..hi` with a fixed-block parallel reduction.
pub fn block_sum<F>(lo: usize, hi: usize, term: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    if hi <= lo {
        return 0.0;
    }
    let blocks = (hi - lo).div_ceil(REDUCTION_BLOCK);
    let partials: Vec<Compensated> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let start = lo + b * REDUCTION_BLOCK;
            let end = (start + REDUCTION_BLOCK).min(hi);
            (start..end).map(&term).sum()
        })
        .collect();
    let mut total = Compensated::new();
    for p in &partials {
        total.merge(p);
    }
    total.value()
}

/// Complex counterpart of [`block_sum`].
pub fn block_sum_complex<F>(lo: usize, hi: usize, term: F) -> Complex64
where
    F: Fn(usize) -> Complex64 + Sync,
{
    if hi <= lo {
        return Complex64::new(0.0, 0.0);
    }
    let blocks = (hi - lo).div_ceil(REDUCTION_BLOCK);
    let partials: Vec<CompensatedComplex> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let start = lo + b * REDUCTION_BLOCK;
            let end = (start + REDUCTION_BLOCK).min(hi);
            let mut acc = CompensatedComplex::new();
            for i in start..end {
                acc.add(term(i));
            }
            acc
        })
        .collect();
    let mut total = CompensatedComplex::new();
    for p in &partials {
        total.merge(p);
    }
    total.value()
}
