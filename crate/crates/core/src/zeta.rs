//! Riemann ζ(s) for complex s with Re(s) > −1 by Euler–Maclaurin summation,
//! the ratios ζ(2s)/ζ(s) and ζ(2s+1)/ζ(s+1/2), truncated Liouville series,
//! and the real-axis bounds 1/(σ−1) < ζ(σ) < σ/(σ−1).

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::liouville::{sieve_range, LiouvilleTable};
use crate::summation::{block_sum_complex, CompensatedComplex};

pub type ComplexValue = Complex64;

/// B_{2k} for k = 1..=16.
const BERNOULLI_EVEN: [f64; 16] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
];

pub const MAX_BERNOULLI_TERMS: usize = 15;
pub const DEFAULT_BERNOULLI_TERMS: usize = 8;
pub const DEFAULT_TARGET_ABS_ERROR: f64 = 1e-12;

/// Division guard for the zeta ratios.
pub const MIN_DIVISOR_MODULUS: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaParams {
    /// Terms 1..cutoff are summed directly.
    pub cutoff: u64,
    pub bernoulli_terms: usize,
    pub target_abs_error: f64,
}

impl ZetaParams {
    /// Cutoff max(50, 2(|t|+10)) with 8 Bernoulli corrections.
    pub fn for_s(s: Complex64) -> Self {
        Self {
            cutoff: min_cutoff(s).max(50),
            bernoulli_terms: DEFAULT_BERNOULLI_TERMS,
            target_abs_error: DEFAULT_TARGET_ABS_ERROR,
        }
    }

    fn validate(&self, s: Complex64) -> Result<()> {
        if self.cutoff < min_cutoff(s) {
            return Err(Error::InvalidParams(format!(
                "cutoff {} below 2(|t|+10) = {} for t = {}",
                self.cutoff,
                min_cutoff(s),
                s.im
            )));
        }
        if !(2..=MAX_BERNOULLI_TERMS).contains(&self.bernoulli_terms) {
            return Err(Error::InvalidParams(format!(
                "bernoulli_terms must be in [2, {MAX_BERNOULLI_TERMS}], got {}",
                self.bernoulli_terms
            )));
        }
        if !(self.target_abs_error > 0.0) {
            return Err(Error::InvalidParams("target_abs_error must be positive".into()));
        }
        Ok(())
    }
}

fn min_cutoff(s: Complex64) -> u64 {
    (2.0 * (s.im.abs() + 10.0)).ceil() as u64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaEval {
    pub value: Complex64,
    /// First omitted Euler–Maclaurin term plus a rounding allowance.
    pub error_estimate: f64,
}

/// ζ(s) with default parameters.
pub fn zeta(s: Complex64) -> Result<Complex64> {
    Ok(zeta_with(s, &ZetaParams::for_s(s))?.value)
}

pub fn zeta_with(s: Complex64, params: &ZetaParams) -> Result<ZetaEval> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::domain("zeta", "s must be finite"));
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole { re: s.re, im: s.im });
    }
    if s.re <= -1.0 {
        return Err(Error::domain("zeta", format!("Re(s) = {} not above -1", s.re)));
    }
    params.validate(s)?;

    let big_n = params.cutoff;
    let mut head = CompensatedComplex::new();
    let mut magnitude = 0.0;
    for n in 1..big_n {
        let term = (-s * (n as f64).ln()).exp();
        magnitude += term.norm();
        head.add(term);
    }
    let nf = big_n as f64;
    let n_pow = (-s * nf.ln()).exp(); // N^{-s}
    let mut acc = head;
    acc.add(n_pow * nf / (s - 1.0));
    acc.add(n_pow * 0.5);

    // Σ B_{2k}/(2k)! · s(s+1)…(s+2k−2) · N^{−s−2k+1}
    let mut rising = s;
    let mut power = n_pow / nf;
    let mut factorial = 2.0;
    let mut omitted = 0.0;
    for k in 1..=params.bernoulli_terms + 1 {
        let term = rising * power * (BERNOULLI_EVEN[k - 1] / factorial);
        if k <= params.bernoulli_terms {
            acc.add(term);
            magnitude += term.norm();
        } else {
            omitted = term.norm();
        }
        let j = (2 * k) as f64;
        rising *= (s + (j - 1.0)) * (s + j);
        power /= nf * nf;
        factorial *= (j + 1.0) * (j + 2.0);
    }
    // Only the truncation part responds to a larger cutoff; the rounding
    // allowance is reported but cannot be traded away in double precision,
    // where |ζ(s)| is large (σ near −1, big |t|).
    if omitted > params.target_abs_error {
        return Err(Error::Precision {
            estimate: omitted,
            target: params.target_abs_error,
        });
    }
    let error_estimate = omitted + 4.0 * f64::EPSILON * magnitude;
    Ok(ZetaEval {
        value: acc.value(),
        error_estimate,
    })
}

fn guarded_ratio(num: Complex64, den: Complex64) -> Result<Complex64> {
    let modulus = den.norm();
    if modulus < MIN_DIVISOR_MODULUS {
        return Err(Error::DivisionInstability { modulus });
    }
    Ok(num / den)
}

/// ζ(2s)/ζ(s) = Σ λ(n) n^{−s} for Re(s) > 1.
pub fn zeta_ratio(s: Complex64) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole { re: 1.0, im: 0.0 });
    }
    guarded_ratio(zeta(2.0 * s)?, zeta(s)?)
}

/// ζ(2s+1)/ζ(s+1/2).
pub fn shifted_ratio(s: Complex64) -> Result<Complex64> {
    if s == Complex64::new(0.5, 0.0) {
        return Err(Error::Pole { re: 1.0, im: 0.0 });
    }
    guarded_ratio(zeta(2.0 * s + 1.0)?, zeta(s + 0.5)?)
}

/// Σ_{n≤N} λ(n) n^{−s}.
pub fn lambda_series(s: Complex64, big_n: u64) -> Result<Complex64> {
    if big_n == 0 {
        return Err(Error::domain("lambda_series", "N must be at least 1"));
    }
    lambda_series_in(&sieve_range(1, big_n + 1)?, s, big_n)
}

/// Σ_{n≤N} λ(n) n^{−s} using an existing table that starts at 1.
pub fn lambda_series_in(table: &LiouvilleTable, s: Complex64, big_n: u64) -> Result<Complex64> {
    if table.lo() != 1 || table.hi() <= big_n {
        return Err(Error::domain("lambda_series", "table does not cover 1..=N"));
    }
    let values = table.values();
    Ok(block_sum_complex(0, big_n as usize, |i| {
        let n = (i + 1) as f64;
        (-s * n.ln()).exp() * values[i] as f64
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RealBoundsReport {
    pub sigma: f64,
    pub lower: f64,
    pub value: f64,
    pub upper: f64,
    pub pass: bool,
}

/// Checks 1/(σ−1) < ζ(σ) < σ/(σ−1) for real σ > 0, σ ≠ 1.
pub fn real_bounds_check(sigma: f64) -> Result<RealBoundsReport> {
    if sigma == 1.0 {
        return Err(Error::Pole { re: 1.0, im: 0.0 });
    }
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::domain("real_bounds_check", format!("sigma must be positive, got {sigma}")));
    }
    let value = zeta(Complex64::new(sigma, 0.0))?.re;
    let lower = 1.0 / (sigma - 1.0);
    let upper = sigma / (sigma - 1.0);
    Ok(RealBoundsReport {
        sigma,
        lower,
        value,
        upper,
        pass: lower < value && value < upper,
    })
}
