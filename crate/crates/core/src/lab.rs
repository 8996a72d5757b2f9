//! End-to-end checks of the identity chain linking ζ(2s)/ζ(s),
//! ζ(2s+1)/ζ(s+1/2), the Dirichlet polynomials F_x(α) and the correction
//! integral J_ξ(s), each reported as a [`VerificationCase`].
//!
//! Cases with Re(s) > 1 are gated at `max(floor, 2 × modeled tail)`. For
//! 1/2 < Re(s) ≤ 1 the truncated integrals converge at best conditionally;
//! those cases carry the `empirical` flag, use a fixed band, and do not gate
//! the exit status. The condition-r scan and the growth-exponent fit are
//! purely observational.

use std::collections::HashMap;
use std::sync::Mutex;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::integral::{integrate_many, tail, Kernel, StepFunction, StepKind};
use crate::liouville::{sieve_range, LiouvilleTable};
use crate::sums::PrefixTable;
use crate::zeta::{lambda_series_in, shifted_ratio, zeta_ratio};

pub const EMPIRICAL: &str = "empirical";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TolerancePolicy {
    /// Smallest tolerance used in the unconditional region.
    pub floor: f64,
    /// Fixed band for the conditional region 1/2 < Re(s) ≤ 1.
    pub empirical_band: f64,
    /// Finite-truncation algebraic identities.
    pub collapse: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            floor: 1e-6,
            empirical_band: 1e-2,
            collapse: 1e-12,
        }
    }
}

/// Serialized field names and order are part of the report format.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationCase {
    pub name: String,
    pub s_re: Option<f64>,
    pub s_im: Option<f64>,
    #[serde(rename = "X")]
    pub x: u64,
    pub lhs_re: f64,
    pub lhs_im: f64,
    pub rhs_re: f64,
    pub rhs_im: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub flags: Vec<String>,
}

impl VerificationCase {
    fn new(
        name: &str,
        s: Option<Complex64>,
        x: u64,
        lhs: Complex64,
        rhs: Complex64,
        tolerance: f64,
        flags: Vec<String>,
    ) -> Self {
        let residual = (lhs - rhs).norm();
        Self {
            name: match s {
                Some(s) => format!("{name}[s={},X={x}]", fmt_complex(s)),
                None => format!("{name}[X={x}]"),
            },
            s_re: s.map(|s| s.re),
            s_im: s.map(|s| s.im),
            x,
            lhs_re: lhs.re,
            lhs_im: lhs.im,
            rhs_re: rhs.re,
            rhs_im: rhs.im,
            residual,
            tolerance,
            pass: residual <= tolerance,
            flags,
        }
    }

    pub fn lhs(&self) -> Complex64 {
        Complex64::new(self.lhs_re, self.lhs_im)
    }

    pub fn rhs(&self) -> Complex64 {
        Complex64::new(self.rhs_re, self.rhs_im)
    }

    pub fn is_empirical(&self) -> bool {
        self.flags.iter().any(|f| f == EMPIRICAL)
    }

    /// Whether this case decides the exit status of a verification run.
    pub fn is_gating(&self) -> bool {
        !self.is_empirical()
    }

    pub fn flag_value(&self, key: &str) -> Option<&str> {
        self.flags
            .iter()
            .find_map(|f| f.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
    }
}

pub fn fmt_complex(s: Complex64) -> String {
    format!("{}{}{}i", s.re, if s.im < 0.0 { "-" } else { "+" }, s.im.abs())
}

/// Evaluation points covering both the unconditional and the conditional
/// region.
pub fn default_points() -> Vec<Complex64> {
    vec![
        Complex64::new(2.0, 0.0),
        Complex64::new(3.0, 0.0),
        Complex64::new(1.5, 2.0),
        Complex64::new(0.75, 0.0),
        Complex64::new(0.6, 1.0),
    ]
}

pub const DEFAULT_X: u64 = 1_000_000;

type CacheKey = (u64, u64, u64, bool);

/// Shared sieve and prefix tables up to a fixed limit, with the truncated
/// integrals memoized per (s, X, kernel).
pub struct Lab {
    table: LiouvilleTable,
    prefix: PrefixTable,
    f_half: StepFunction,
    f_one: StepFunction,
    l_xi: StepFunction,
    policy: TolerancePolicy,
    cache: Mutex<HashMap<CacheKey, Vec<Complex64>>>,
}

/// ∫_1^X of F_half, F_one and L_xi against u^{−s−1/2}, with tail bounds.
struct ShiftedIntegrals {
    half: Complex64,
    one: Complex64,
    l: Complex64,
    tail_half: f64,
    tail_one: f64,
    tail_l: f64,
}

impl Lab {
    pub fn new(limit: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::domain("Lab::new", "limit must be at least 2"));
        }
        let table = sieve_range(1, limit + 1)?;
        let prefix = PrefixTable::from_table(&table)?;
        Ok(Self {
            f_half: StepFunction::from_prefix(StepKind::FHalf, &prefix),
            f_one: StepFunction::from_prefix(StepKind::FOne, &prefix),
            l_xi: StepFunction::from_prefix(StepKind::LXi, &prefix),
            table,
            prefix,
            policy: TolerancePolicy::default(),
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn with_policy(mut self, policy: TolerancePolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn limit(&self) -> u64 {
        self.prefix.limit()
    }

    pub fn prefix(&self) -> &PrefixTable {
        &self.prefix
    }

    fn check_x(&self, op: &'static str, x: u64) -> Result<()> {
        if x < 2 || x > self.limit() {
            return Err(Error::domain(op, format!("X = {x} outside [2, {}]", self.limit())));
        }
        Ok(())
    }

    fn cached(&self, s: Complex64, x: u64, shifted: bool, compute: impl FnOnce() -> Result<Vec<Complex64>>) -> Result<Vec<Complex64>> {
        let key = (s.re.to_bits(), s.im.to_bits(), x, shifted);
        if let Some(v) = self.cache.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = compute()?;
        self.cache.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    fn shifted(&self, s: Complex64, x: u64) -> Result<ShiftedIntegrals> {
        let v = self.cached(s, x, true, || {
            integrate_many(&[&self.f_half, &self.f_one, &self.l_xi], Kernel::Shifted, s, 1, x)
        })?;
        let w = s + 0.5;
        Ok(ShiftedIntegrals {
            half: v[0],
            one: v[1],
            l: v[2],
            tail_half: tail(&self.f_half, w, x, (x / 10).max(1)).0,
            tail_one: tail(&self.f_one, w, x, (x / 10).max(1)).0,
            tail_l: tail(&self.l_xi, w, x, (x / 2).max(1)).0,
        })
    }

    fn gated(&self, tail: f64) -> f64 {
        self.policy.floor.max(2.0 * tail)
    }

    /// F_x(1) → −1.
    pub fn lemma_an(&self, x: u64) -> Result<VerificationCase> {
        self.check_x("verify_lemma_an", x)?;
        let residual_at = |x: u64| (self.prefix.f_one[(x - 1) as usize] + 1.0).abs();
        let mut flags = Vec::new();
        let doublings: Vec<u64> = [x / 8, x / 4, x / 2, x].into_iter().filter(|&v| v >= 2).collect();
        if doublings.len() > 1 {
            let r: Vec<f64> = doublings.iter().map(|&v| residual_at(v)).collect();
            let trend = if r.windows(2).all(|w| w[1] <= w[0]) {
                "non-increasing"
            } else {
                "mixed"
            };
            flags.push(format!("trend={trend}"));
        }
        let lhs = self.prefix.f_one[(x - 1) as usize];
        // No unconditional rate is known; the band shrinks like x^{-1/2}.
        let tolerance = 10.0 / (x as f64).sqrt();
        Ok(VerificationCase::new(
            "lemma_an",
            None,
            x,
            Complex64::new(lhs, 0.0),
            Complex64::new(-1.0, 0.0),
            tolerance,
            flags,
        ))
    }

    /// (ζ(2s)/ζ(s) − 1)/(s − 1) = ∫_1^∞ F_u(1) u^{−s} du for Re(s) > 1.
    pub fn eq_gt1(&self, s: Complex64, x: u64) -> Result<VerificationCase> {
        self.check_x("verify_eq_gt1", x)?;
        if !(s.re > 1.0) {
            return Err(Error::domain("verify_eq_gt1", "needs Re(s) > 1"));
        }
        let lhs = (zeta_ratio(s)? - 1.0) / (s - 1.0);
        let v = self.cached(s, x, false, || integrate_many(&[&self.f_one], Kernel::Plain, s, 1, x))?;
        let (t, _) = tail(&self.f_one, s, x, (x / 10).max(1));
        Ok(VerificationCase::new(
            "eq_gt1",
            Some(s),
            x,
            lhs,
            v[0],
            self.gated(t),
            vec![format!("tail={t:e}")],
        ))
    }

    /// (ζ(2s)/ζ(s) − 1)/(s − 1/2) = ∫_1^∞ F_u(1/2) u^{−s−1/2} du for Re(s) > 1.
    pub fn lemma_integral(&self, s: Complex64, x: u64) -> Result<VerificationCase> {
        self.check_x("verify_lemma_integral", x)?;
        if !(s.re > 1.0) {
            return Err(Error::domain("verify_lemma_integral", "needs Re(s) > 1"));
        }
        let lhs = (zeta_ratio(s)? - 1.0) / (s - 0.5);
        let i = self.shifted(s, x)?;
        Ok(VerificationCase::new(
            "lemma_integral",
            Some(s),
            x,
            lhs,
            i.half,
            self.gated(i.tail_half),
            vec![format!("tail={:e}", i.tail_half)],
        ))
    }

    fn region(&self, s: Complex64, modeled_tail: f64) -> (f64, Vec<String>) {
        if s.re > 1.0 {
            (self.gated(modeled_tail), vec![format!("tail={modeled_tail:e}")])
        } else {
            (self.policy.empirical_band, vec![EMPIRICAL.to_string(), "tail=unmodeled".to_string()])
        }
    }

    fn check_half_plane(op: &'static str, s: Complex64) -> Result<()> {
        if !(s.re > 0.5) {
            return Err(Error::domain(op, "needs Re(s) > 1/2"));
        }
        Ok(())
    }

    /// (s−1/2)^{−1}(ζ(2s)/ζ(s) − 1) − J_ξ(s) = ∫_1^∞ F_u(1) u^{−s−1/2} du.
    pub fn theorem_main(&self, s: Complex64, x: u64) -> Result<VerificationCase> {
        self.check_x("verify_theorem_main", x)?;
        Self::check_half_plane("verify_theorem_main", s)?;
        let i = self.shifted(s, x)?;
        let lhs = (zeta_ratio(s)? - 1.0) / (s - 0.5) - i.l;
        let (tolerance, flags) = self.region(s, i.tail_l + i.tail_one);
        Ok(VerificationCase::new("theorem_main", Some(s), x, lhs, i.one, tolerance, flags))
    }

    /// The finite-X form of the same identity, with the zeta side replaced
    /// by ∫_1^X F_u(1/2): holds exactly for every s and X because
    /// L_u = F_u(1/2) − F_u(1) level by level.
    pub fn theorem_main_collapse(&self, s: Complex64, x: u64) -> Result<VerificationCase> {
        self.check_x("verify_theorem_main", x)?;
        Self::check_half_plane("verify_theorem_main", s)?;
        let i = self.shifted(s, x)?;
        Ok(VerificationCase::new(
            "theorem_main_collapse",
            Some(s),
            x,
            i.half - i.l,
            i.one,
            self.policy.collapse,
            vec!["finite-truncation".to_string()],
        ))
    }

    /// ζ(2s)/ζ(s) − (s−1/2) J_ξ(s) = ζ(2s+1)/ζ(s+1/2), with the right side
    /// also compared against Σ_{n≤X} λ(n) n^{−s−1/2}.
    pub fn zeta_identity(&self, s: Complex64, x: u64) -> Result<VerificationCase> {
        self.check_x("verify_zeta_identity", x)?;
        Self::check_half_plane("verify_zeta_identity", s)?;
        let i = self.shifted(s, x)?;
        let lhs = zeta_ratio(s)? - (s - 0.5) * i.l;
        let rhs = shifted_ratio(s)?;
        let (tolerance, mut flags) = self.region(s, (s - 0.5).norm() * i.tail_l);
        let series = lambda_series_in(&self.table, s + 0.5, x)?;
        let gap = (rhs - series).norm();
        // Σ_{n>X} n^{−σ−1/2} ≤ X^{1/2−σ}/(σ − 1/2)
        let bound = (x as f64).powf(0.5 - s.re) / (s.re - 0.5);
        flags.push(format!("series_gap={gap:e}"));
        flags.push(format!("series_tail_bound={bound:e}"));
        if gap <= bound {
            flags.push("series_within_tail".to_string());
        }
        Ok(VerificationCase::new("zeta_identity", Some(s), x, lhs, rhs, tolerance, flags))
    }

    /// Every case at every point, ordered by name.
    pub fn run_all(&self, points: &[Complex64], x: u64) -> Result<Vec<VerificationCase>> {
        let mut cases = vec![self.lemma_an(x)?];
        for &s in points {
            if s.re > 1.0 {
                cases.push(self.eq_gt1(s, x)?);
                cases.push(self.lemma_integral(s, x)?);
            }
            cases.push(self.theorem_main(s, x)?);
            cases.push(self.theorem_main_collapse(s, x)?);
            cases.push(self.zeta_identity(s, x)?);
        }
        cases.sort_by(|a, b| a.name.cmp(&b.name));
        cases.dedup_by(|a, b| a.name == b.name);
        Ok(cases)
    }

    pub fn condition_r(&self, x_max: u64) -> Result<ConditionRReport> {
        if x_max < 2 || x_max > self.limit() {
            return Err(Error::domain("explore_condition_r", format!("x_max outside [2, {}]", self.limit())));
        }
        let l = &self.prefix.l_xi[..x_max as usize];
        let (mut max, mut argmax) = (f64::NEG_INFINITY, 0);
        for (i, &v) in l.iter().enumerate().skip(1) {
            if v > max {
                max = v;
                argmax = i as u64 + 1;
            }
        }
        let half = (x_max / 2).max(2) as usize;
        let upper_half_max = l[half - 1..].iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Ok(ConditionRReport {
            x_max,
            max,
            argmax,
            implied_r: 1.0 - max,
            upper_half_max,
            value_at_x_max: l[x_max as usize - 1],
        })
    }

    pub fn growth_exponent(&self, x_max: u64) -> Result<GrowthReport> {
        if x_max < 1000 || x_max > self.limit() {
            return Err(Error::domain(
                "growth_exponent_diagnostic",
                format!("x_max outside [1000, {}]", self.limit()),
            ));
        }
        let samples = self.prefix.p_sum[..x_max as usize]
            .iter()
            .enumerate()
            .map(|(i, &p)| (i as u64 + 1, p as f64));
        Ok(fit_growth_exponent(samples, x_max))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionRReport {
    pub x_max: u64,
    /// max of L_x(ξ) over 2 ≤ x ≤ x_max
    pub max: f64,
    pub argmax: u64,
    /// 1 − max; the sufficient condition asks for a positive value holding
    /// for all large x.
    pub implied_r: f64,
    /// max over the upper half [x_max/2, x_max], the trend indicator.
    pub upper_half_max: f64,
    pub value_at_x_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthReport {
    pub x_max: u64,
    /// Least-squares slope of log|P| against log x over record peaks.
    pub exponent: f64,
    pub std_error: f64,
    /// Half-width of the ±2σ band.
    pub band: f64,
    pub peaks: usize,
    /// log10 of the x range covered by the fitted peaks.
    pub span_decades: f64,
    pub wide_band: bool,
}

/// Smallest x used in the growth fit; early peaks are dominated by small
/// integer effects.
pub const GROWTH_FIT_MIN_X: u64 = 10;

/// Fits |v(x)| ≈ C x^θ through the record peaks of |v| (each x where |v|
/// exceeds every earlier value), x ≥ [`GROWTH_FIT_MIN_X`].
pub fn fit_growth_exponent(samples: impl IntoIterator<Item = (u64, f64)>, x_max: u64) -> GrowthReport {
    let mut record = 0.0;
    let mut pts = Vec::new();
    for (x, v) in samples {
        let a = v.abs();
        if a > record {
            record = a;
            if x >= GROWTH_FIT_MIN_X {
                pts.push(((x as f64).ln(), a.ln()));
            }
        }
    }
    let n = pts.len();
    if n < 3 {
        return GrowthReport {
            x_max,
            exponent: f64::NAN,
            std_error: f64::INFINITY,
            band: f64::INFINITY,
            peaks: n,
            span_decades: 0.0,
            wide_band: true,
        };
    }
    let nf = n as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / nf;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / nf;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let std_error = (sse / (nf - 2.0) / sxx).sqrt();
    let band = 2.0 * std_error;
    // Record peaks are strongly correlated, so the OLS error understates the
    // spread; a fit over fewer than three decades is not trusted either way.
    let span_decades = (pts[n - 1].0 - pts[0].0) / std::f64::consts::LN_10;
    GrowthReport {
        x_max,
        exponent: slope,
        std_error,
        band,
        peaks: n,
        span_decades,
        wide_band: band > 0.05 || n < 10 || span_decades < 3.0,
    }
}

pub fn verify_lemma_an(x: u64) -> Result<VerificationCase> {
    Lab::new(x)?.lemma_an(x)
}

pub fn verify_eq_gt1(s: Complex64, x: u64) -> Result<VerificationCase> {
    Lab::new(x)?.eq_gt1(s, x)
}

pub fn verify_lemma_integral(s: Complex64, x: u64) -> Result<VerificationCase> {
    Lab::new(x)?.lemma_integral(s, x)
}

pub fn verify_theorem_main(s: Complex64, x: u64) -> Result<VerificationCase> {
    Lab::new(x)?.theorem_main(s, x)
}

pub fn verify_zeta_identity(s: Complex64, x: u64) -> Result<VerificationCase> {
    Lab::new(x)?.zeta_identity(s, x)
}

pub fn explore_condition_r(x_max: u64) -> Result<ConditionRReport> {
    if x_max < 2 {
        return Err(Error::domain("explore_condition_r", "x_max must be at least 2"));
    }
    Lab::new(x_max)?.condition_r(x_max)
}

pub fn growth_exponent_diagnostic(x_max: u64) -> Result<GrowthReport> {
    if x_max < 1000 {
        return Err(Error::domain("growth_exponent_diagnostic", "x_max must be at least 1000"));
    }
    Lab::new(x_max)?.growth_exponent(x_max)
}
