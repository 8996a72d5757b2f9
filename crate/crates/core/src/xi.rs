//! The mean-value exponent sequence ξ(n) ∈ (α, β) defined by
//!
//! ```text
//! n^{−β} − n^{−α} = −(β − α) · log(n) · n^{−ξ(n)},    n ≥ 2,
//! ```
//!
//! evaluated in closed form as
//! `ξ(n) = α + [log log n + log(β−α) − log(1 − n^{α−β})] / log n`.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiSequence {
    alpha: f64,
    beta: f64,
}

impl XiSequence {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite()) || beta <= alpha {
            return Err(Error::domain(
                "XiSequence::new",
                format!("need finite alpha < beta, got alpha={alpha}, beta={beta}"),
            ));
        }
        Ok(Self { alpha, beta })
    }

    /// The (α, β) = (1/2, 1) sequence that links F_x(1/2) and F_x(1).
    pub fn half_one() -> Self {
        Self { alpha: 0.5, beta: 1.0 }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn xi(&self, n: u64) -> Result<f64> {
        check_n("xi", n)?;
        Ok(self.xi_unchecked(n))
    }

    fn xi_unchecked(&self, n: u64) -> f64 {
        let ln_n = (n as f64).ln();
        let gap = self.beta - self.alpha;
        let e = -gap * ln_n;
        // log(1 − n^{α−β}), accurate whether n^{α−β} is near 1 or near 0.
        let q = e.exp();
        let log_one_minus_q = if q < 0.5 { (-q).ln_1p() } else { (-e.exp_m1()).ln() };
        self.alpha + (ln_n.ln() + gap.ln() - log_one_minus_q) / ln_n
    }

    /// Defining-equation residual `n^{−β} − n^{−α} + (β−α) log(n) n^{−ξ(n)}`,
    /// with n^{−ξ(n)} obtained by exponentiating the closed form.
    pub fn residual(&self, n: u64) -> Result<f64> {
        check_n("xi_residual", n)?;
        Ok(self.residual_at(n, self.xi_unchecked(n)))
    }

    /// Residual for an arbitrary trial exponent in place of ξ(n).
    pub fn residual_at(&self, n: u64, xi: f64) -> f64 {
        let ln_n = (n as f64).ln();
        let direct = (self.beta - self.alpha) * ln_n * (-xi * ln_n).exp();
        ((-self.beta * ln_n).exp() - (-self.alpha * ln_n).exp()) + direct
    }

    /// `(β−α) log(n) n^{−ξ(n)}` through the exact rearrangement
    /// `n^{−α} − n^{−β}`.
    pub fn weight(&self, n: u64) -> Result<f64> {
        check_n("mvt_weight", n)?;
        Ok(inv_pow(n, self.alpha) - inv_pow(n, self.beta))
    }

    /// Same quantity, computed by exponentiating ξ(n). Only used to
    /// cross-validate the closed form.
    pub fn weight_direct(&self, n: u64) -> Result<f64> {
        check_n("mvt_weight", n)?;
        let ln_n = (n as f64).ln();
        Ok((self.beta - self.alpha) * ln_n * (-self.xi_unchecked(n) * ln_n).exp())
    }
}

fn check_n(op: &'static str, n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::domain(op, format!("n must be at least 2, got {n}")));
    }
    Ok(())
}

/// n^{−α}, exact-as-possible for the exponents that matter most.
#[inline]
pub(crate) fn inv_pow(n: u64, alpha: f64) -> f64 {
    let x = n as f64;
    if alpha == 1.0 {
        1.0 / x
    } else if alpha == 0.5 {
        1.0 / x.sqrt()
    } else if alpha == 0.0 {
        1.0
    } else {
        x.powf(-alpha)
    }
}

pub fn xi(n: u64, seq: &XiSequence) -> Result<f64> {
    seq.xi(n)
}

pub fn xi_residual(n: u64, seq: &XiSequence) -> Result<f64> {
    seq.residual(n)
}

/// `(β−α) log(n) n^{−ξ(n)} = n^{−α} − n^{−β}` for n ≥ 2.
pub fn mvt_weight(n: u64, seq: &XiSequence) -> Result<f64> {
    seq.weight(n)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotoneReport {
    pub n_max: u64,
    /// ξ(n+1) < ξ(n) held for every 2 ≤ n < n_max.
    pub monotone: bool,
    pub first_increase: Option<u64>,
    /// ξ(n_max) − α.
    pub gap: f64,
    /// log log n_max / log n_max, the leading-order size of the gap.
    pub leading_term: f64,
}

pub fn check_monotone_limit(seq: &XiSequence, n_max: u64) -> Result<MonotoneReport> {
    if n_max < 3 {
        return Err(Error::domain("check_monotone_limit", "n_max must be at least 3"));
    }
    let mut prev = seq.xi_unchecked(2);
    let mut first_increase = None;
    for n in 3..=n_max {
        let cur = seq.xi_unchecked(n);
        if cur >= prev && first_increase.is_none() {
            first_increase = Some(n - 1);
        }
        prev = cur;
    }
    let ln_n = (n_max as f64).ln();
    Ok(MonotoneReport {
        n_max,
        monotone: first_increase.is_none(),
        first_increase,
        gap: prev - seq.alpha,
        leading_term: ln_n.ln() / ln_n,
    })
}

/// Roughly log-spaced integers in `[2, n_max]`, deduplicated, always
/// including both ends.
pub fn log_grid(n_max: u64, per_decade: u32) -> Vec<u64> {
    if n_max < 2 {
        return Vec::new();
    }
    let steps = ((n_max as f64).log10() * per_decade as f64).ceil().max(1.0) as u32;
    let ratio = (n_max as f64 / 2.0).ln() / steps as f64;
    let mut grid: Vec<u64> = (0..=steps)
        .map(|k| (2.0 * (ratio * k as f64).exp()).round() as u64)
        .map(|n| n.clamp(2, n_max))
        .collect();
    grid.push(n_max);
    grid.dedup();
    grid
}

#[derive(Serialize)]
struct XiRow {
    n: u64,
    xi: f64,
    residual: f64,
}

/// CSV `(n, xi, residual)` over `grid`.
pub fn write_xi_csv<W: Write>(out: W, seq: &XiSequence, grid: &[u64]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for &n in grid {
        w.serialize(XiRow {
            n,
            xi: seq.xi(n)?,
            residual: seq.residual(n)?,
        })?;
    }
    w.flush()?;
    Ok(())
}
