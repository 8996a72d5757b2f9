//! Exact Dirichlet integrals of integer-breakpoint step functions.
//!
//! A step function here takes the constant level ℓ_n on each `[n, n+1)`.
//! Against a power kernel u^{−w} every segment integrates in closed form,
//!
//! ```text
//! ∫_n^{n+1} u^{−w} du = n^{1−w} · log(1 + 1/n) · exprel((1−w) · log(1 + 1/n)),
//! ```
//!
//! with `exprel(z) = (e^z − 1)/z`, so the truncated integral over `[1, X]`
//! is a finite sum with no quadrature error. The `P_over_u` kind carries an
//! extra 1/u inside the integrand and is handled by shifting w by one.

use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sums::PrefixTable;
use crate::summation::{block_sum_complex, Compensated, CompensatedComplex, REDUCTION_BLOCK};

/// Tail estimates below this mark an [`IntegralResult`] as converged.
pub const DEFAULT_TAIL_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StepKind {
    /// u ↦ F_u(1/2)
    FHalf,
    /// u ↦ F_u(1)
    FOne,
    /// u ↦ L_u(ξ)
    LXi,
    /// u ↦ T(u)
    TSum,
    /// u ↦ P(u)/u, the only kind that is not constant between integers
    POverU,
    /// u ↦ c
    Constant,
}

impl StepKind {
    pub fn name(&self) -> &'static str {
        match self {
            StepKind::FHalf => "F_half",
            StepKind::FOne => "F_one",
            StepKind::LXi => "L_xi",
            StepKind::TSum => "T_sum",
            StepKind::POverU => "P_over_u",
            StepKind::Constant => "one",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "F_half" => StepKind::FHalf,
            "F_one" => StepKind::FOne,
            "L_xi" => StepKind::LXi,
            "T_sum" => StepKind::TSum,
            "P_over_u" => StepKind::POverU,
            "one" | "constant" => StepKind::Constant,
            _ => return None,
        })
    }

    /// Kernel the identities pair this kind with.
    pub fn default_kernel(&self) -> Kernel {
        match self {
            StepKind::TSum | StepKind::POverU => Kernel::Plain,
            _ => Kernel::Shifted,
        }
    }

    /// Assumed growth exponent γ of the levels, |ℓ_n| ≤ c·n^γ, used by the
    /// tail model.
    fn growth(&self) -> f64 {
        match self {
            StepKind::FHalf | StepKind::LXi | StepKind::POverU => 0.5,
            StepKind::FOne | StepKind::TSum | StepKind::Constant => 0.0,
        }
    }

    fn kernel_shift(&self) -> f64 {
        match self {
            StepKind::POverU => 1.0,
            _ => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Kernel {
    /// u^{−s−1/2}
    Shifted,
    /// u^{−s}
    Plain,
}

impl Kernel {
    pub fn exponent(&self, s: Complex64) -> Complex64 {
        match self {
            Kernel::Shifted => s + 0.5,
            Kernel::Plain => s,
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "shifted" => Some(Kernel::Shifted),
            "plain" => Some(Kernel::Plain),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
enum Levels {
    Table(Vec<f64>),
    Constant(f64),
}

/// Step function on `[1, limit]` with integer breakpoints.
#[derive(Debug, Clone)]
pub struct StepFunction {
    kind: StepKind,
    levels: Levels,
}

impl StepFunction {
    /// `levels[n − 1]` is the level on `[n, n+1)`. For `POverU` the level is
    /// P(n); the 1/u factor is part of the integrand.
    pub fn from_levels(kind: StepKind, levels: Vec<f64>) -> Self {
        Self {
            kind,
            levels: Levels::Table(levels),
        }
    }

    pub fn constant(c: f64) -> Self {
        Self {
            kind: StepKind::Constant,
            levels: Levels::Constant(c),
        }
    }

    pub fn from_prefix(kind: StepKind, prefix: &PrefixTable) -> Self {
        let levels = match kind {
            StepKind::FHalf => prefix.f_half.clone(),
            StepKind::FOne => prefix.f_one.clone(),
            StepKind::LXi => prefix.l_xi.clone(),
            StepKind::TSum => prefix.t_sum.clone(),
            StepKind::POverU => prefix.p_sum.iter().map(|&p| p as f64).collect(),
            StepKind::Constant => return Self::constant(1.0),
        };
        Self::from_levels(kind, levels)
    }

    pub fn kind(&self) -> StepKind {
        self.kind
    }

    /// Largest X for which `[1, X]` is covered.
    pub fn limit(&self) -> u64 {
        match &self.levels {
            Levels::Table(v) => v.len() as u64 + 1,
            Levels::Constant(_) => u64::MAX,
        }
    }

    #[inline]
    pub fn level(&self, n: u64) -> f64 {
        match &self.levels {
            Levels::Table(v) => v[(n - 1) as usize],
            Levels::Constant(c) => *c,
        }
    }

    /// Exponent actually integrated: the kernel's, plus one for `POverU`.
    pub(crate) fn effective_exponent(&self, kernel: Kernel, s: Complex64) -> Complex64 {
        kernel.exponent(s) + self.kind.kernel_shift()
    }

    /// max |ℓ_n| / n^γ over `lo ≤ n < hi`.
    fn growth_constant(&self, lo: u64, hi: u64) -> f64 {
        let gamma = self.kind.growth();
        match &self.levels {
            Levels::Constant(c) => c.abs(),
            Levels::Table(_) => (lo.max(1)..hi)
                .map(|n| self.level(n).abs() / (n as f64).powf(gamma))
                .fold(0.0, f64::max),
        }
    }
}

/// (e^z − 1)/z for complex z.
#[inline]
fn exprel(z: Complex64) -> Complex64 {
    if z.norm_sqr() < 1e-10 {
        return 1.0 + z * (0.5 + z / 6.0);
    }
    let (sin, cos) = z.im.sin_cos();
    let half = (0.5 * z.im).sin();
    let em1 = Complex64::new(z.re.exp_m1() * cos - 2.0 * half * half, z.re.exp() * sin);
    em1 / z
}

#[inline]
fn exprel_real(z: f64) -> f64 {
    if z.abs() < 1e-8 {
        1.0 + z * (0.5 + z / 6.0)
    } else {
        z.exp_m1() / z
    }
}

/// ∫_n^{n+1} u^{−w} du.
#[inline]
pub fn segment_weight(w: Complex64, n: u64) -> Complex64 {
    let x = n as f64;
    let step = (1.0 / x).ln_1p();
    let one_minus_w = 1.0 - w;
    (one_minus_w * x.ln()).exp() * (step * exprel(one_minus_w * step))
}

#[inline]
fn segment_weight_real(w: f64, ln_n: f64, step: f64) -> f64 {
    let e = 1.0 - w;
    (e * ln_n).exp() * step * exprel_real(e * step)
}

fn check_exponent(w: Complex64) -> Result<()> {
    if w == Complex64::new(1.0, 0.0) {
        return Err(Error::domain("integrate_step", "s sits on the kernel singularity"));
    }
    if !(w.re.is_finite() && w.im.is_finite()) {
        return Err(Error::domain("integrate_step", "s must be finite"));
    }
    Ok(())
}

/// ∫_a^b G(u) K(u) du for integers 1 ≤ a ≤ b ≤ limit, exactly.
pub fn integrate_range(g: &StepFunction, kernel: Kernel, s: Complex64, a: u64, b: u64) -> Result<Complex64> {
    let w = g.effective_exponent(kernel, s);
    check_exponent(w)?;
    if a == 0 || b < a || b > g.limit() {
        return Err(Error::domain(
            "integrate_range",
            format!("range [{a}, {b}] outside [1, {}]", g.limit()),
        ));
    }
    Ok(block_sum_complex(a as usize, b as usize, |n| {
        let n = n as u64;
        segment_weight(w, n) * g.level(n)
    }))
}

/// Several ∫_a^b G_i(u) K(u) du in one pass, sharing the kernel weights.
/// All step functions must integrate against the same effective exponent.
pub fn integrate_many(gs: &[&StepFunction], kernel: Kernel, s: Complex64, a: u64, b: u64) -> Result<Vec<Complex64>> {
    let Some(first) = gs.first() else {
        return Ok(Vec::new());
    };
    let w = first.effective_exponent(kernel, s);
    check_exponent(w)?;
    if gs.iter().any(|g| g.kind.kernel_shift() != first.kind.kernel_shift()) {
        return Err(Error::domain("integrate_many", "mixed P_over_u and constant-level kinds"));
    }
    let limit = gs.iter().map(|g| g.limit()).min().unwrap_or(0);
    if a == 0 || b < a || b > limit {
        return Err(Error::domain("integrate_many", format!("range [{a}, {b}] outside [1, {limit}]")));
    }
    let blocks = (b - a).div_ceil(REDUCTION_BLOCK as u64);
    let partials: Vec<Vec<CompensatedComplex>> = (0..blocks)
        .into_par_iter()
        .map(|blk| {
            let lo = a + blk * REDUCTION_BLOCK as u64;
            let hi = (lo + REDUCTION_BLOCK as u64).min(b);
            let mut acc = vec![CompensatedComplex::new(); gs.len()];
            for n in lo..hi {
                let weight = segment_weight(w, n);
                for (acc, g) in acc.iter_mut().zip(gs) {
                    acc.add(weight * g.level(n));
                }
            }
            acc
        })
        .collect();
    let mut totals = vec![CompensatedComplex::new(); gs.len()];
    for block in &partials {
        for (t, p) in totals.iter_mut().zip(block) {
            t.merge(p);
        }
    }
    Ok(totals.iter().map(|t| t.value()).collect())
}

/// How the omitted part ∫_X^∞ was treated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum TailModel {
    /// |ℓ_u| ≤ c u^γ fitted on a window below X; bound c X^{1+γ−σ}/(σ−1−γ).
    PowerBound { c: f64, gamma: f64 },
    /// Kernel decay does not beat the assumed growth; convergence, if any,
    /// is conditional and the tail is not modeled.
    Unmodeled,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegralResult {
    pub value: Complex64,
    pub truncation: u64,
    /// Modeled bound on |∫_X^∞|; infinite when unmodeled.
    pub tail_estimate: f64,
    pub tail_model: TailModel,
    pub converged: bool,
}

impl IntegralResult {
    pub fn converged_within(&self, tolerance: f64) -> bool {
        self.tail_estimate < tolerance
    }
}

pub(crate) fn tail(g: &StepFunction, w: Complex64, x: u64, window_lo: u64) -> (f64, TailModel) {
    let gamma = g.kind.growth();
    let excess = w.re - 1.0 - gamma;
    if excess <= 0.0 {
        return (f64::INFINITY, TailModel::Unmodeled);
    }
    let c = g.growth_constant(window_lo, x);
    let bound = c * (x as f64).powf(-excess) / excess;
    (bound, TailModel::PowerBound { c, gamma })
}

fn integrate_with_window(g: &StepFunction, kernel: Kernel, s: Complex64, x: u64, window_lo: u64) -> Result<IntegralResult> {
    if x < 2 {
        return Err(Error::domain("integrate_step", "X must be at least 2"));
    }
    let value = integrate_range(g, kernel, s, 1, x)?;
    let (tail_estimate, tail_model) = tail(g, g.effective_exponent(kernel, s), x, window_lo);
    Ok(IntegralResult {
        value,
        truncation: x,
        tail_estimate,
        tail_model,
        converged: tail_estimate < DEFAULT_TAIL_TOLERANCE,
    })
}

/// ∫_1^X G(u) K(u) du with a tail model fitted on the last decade `[X/10, X)`.
pub fn integrate_step(g: &StepFunction, kernel: Kernel, s: Complex64, x: u64) -> Result<IntegralResult> {
    integrate_with_window(g, kernel, s, x, (x / 10).max(1))
}

/// J_ξ(s) truncated at X: ∫_1^X L_u(ξ) u^{−s−1/2} du, tail fitted on `[X/2, X)`.
pub fn j_xi(prefix: &PrefixTable, s: Complex64, x: u64) -> Result<IntegralResult> {
    j_xi_of(&StepFunction::from_prefix(StepKind::LXi, prefix), s, x)
}

pub(crate) fn j_xi_of(l: &StepFunction, s: Complex64, x: u64) -> Result<IntegralResult> {
    if !(s.re > 0.5) {
        return Err(Error::domain("j_xi", format!("need Re(s) > 1/2, got {}", s.re)));
    }
    integrate_with_window(l, Kernel::Shifted, s, x, (x / 2).max(1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Convergence {
    Converging,
    Diverging,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TracePoint {
    pub x: u64,
    pub value: f64,
    pub tail_estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SigmaTrace {
    pub sigma: f64,
    pub points: Vec<TracePoint>,
    /// Fitted exponent of the increment size per unit log X; negative means
    /// the increments shrink like a power of X.
    pub decay_slope: f64,
    /// Last three successive differences all below the Cauchy tolerance.
    pub cauchy_settled: bool,
    pub class: Convergence,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaCOptions {
    /// |slope| below this is inconclusive.
    pub slope_tolerance: f64,
    /// Number of trailing increments in the slope fit.
    pub fit_increments: usize,
    pub cauchy_tolerance: f64,
}

impl Default for SigmaCOptions {
    fn default() -> Self {
        Self {
            slope_tolerance: 0.02,
            fit_increments: 4,
            cauchy_tolerance: 1e-3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SigmaCEstimate {
    pub kind: StepKind,
    pub kernel: Kernel,
    pub traces: Vec<SigmaTrace>,
    /// Bracket for σ_c; an infinite end means no grid point settled that side.
    pub lower: f64,
    pub upper: f64,
    /// False when the bracket is open, contains inconclusive points, or the
    /// classification is not monotone in σ.
    pub conclusive: bool,
    pub flags: Vec<String>,
}

impl SigmaCEstimate {
    pub fn contains(&self, sigma: f64) -> bool {
        self.lower < sigma && sigma < self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    /// CSV `(sigma, X, re, im, tail_estimate)`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        #[derive(Serialize)]
        struct Row {
            sigma: f64,
            #[serde(rename = "X")]
            x: u64,
            re: f64,
            im: f64,
            tail_estimate: f64,
        }
        let mut w = csv::Writer::from_writer(out);
        for t in &self.traces {
            for p in &t.points {
                w.serialize(Row {
                    sigma: t.sigma,
                    x: p.x,
                    re: p.value,
                    im: 0.0,
                    tail_estimate: p.tail_estimate,
                })?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

/// Cumulative ∫_1^{X_k} G(u) u^{−w} du for every real exponent in `ws` and
/// every breakpoint in `xs`; one pass over n shares the logarithms.
fn real_traces(g: &StepFunction, ws: &[f64], xs: &[u64]) -> Vec<Vec<f64>> {
    let mut totals = vec![Compensated::new(); ws.len()];
    let mut out = vec![Vec::with_capacity(xs.len()); ws.len()];
    let mut start = 1u64;
    for &x in xs {
        let blocks = (x - start).div_ceil(REDUCTION_BLOCK as u64);
        let partials: Vec<Vec<Compensated>> = (0..blocks)
            .into_par_iter()
            .map(|b| {
                let lo = start + b * REDUCTION_BLOCK as u64;
                let hi = (lo + REDUCTION_BLOCK as u64).min(x);
                let mut acc = vec![Compensated::new(); ws.len()];
                for n in lo..hi {
                    let level = g.level(n);
                    if level == 0.0 {
                        continue;
                    }
                    let nf = n as f64;
                    let (ln_n, step) = (nf.ln(), (1.0 / nf).ln_1p());
                    for (a, &w) in acc.iter_mut().zip(ws) {
                        a.add(level * segment_weight_real(w, ln_n, step));
                    }
                }
                acc
            })
            .collect();
        for block in &partials {
            for (t, p) in totals.iter_mut().zip(block) {
                t.merge(p);
            }
        }
        for (o, t) in out.iter_mut().zip(&totals) {
            o.push(t.value());
        }
        start = x;
    }
    out
}

fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Classifies each σ in `sigma_grid` by how the increments of the partial
/// integrals ∫_1^X G(u) K(u) du (s = σ) scale along `x_schedule`, and
/// brackets the abscissa of convergence between the last diverging and the
/// first of the consistently converging grid points.
pub fn estimate_sigma_c(
    g: &StepFunction,
    kernel: Kernel,
    sigma_grid: &[f64],
    x_schedule: &[u64],
    opts: &SigmaCOptions,
) -> Result<SigmaCEstimate> {
    if sigma_grid.is_empty() || sigma_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("estimate_sigma_c", "sigma grid must be non-empty and strictly ascending"));
    }
    if x_schedule.len() < 4 || x_schedule[0] < 2 || x_schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain(
            "estimate_sigma_c",
            "X schedule needs at least 4 strictly increasing values, the first at least 2",
        ));
    }
    let x_last = *x_schedule.last().unwrap();
    if x_last > g.limit() {
        return Err(Error::domain("estimate_sigma_c", format!("X = {x_last} exceeds the step function's range")));
    }
    let mut flags = Vec::new();
    let mut sigmas = Vec::with_capacity(sigma_grid.len());
    let mut ws = Vec::with_capacity(sigma_grid.len());
    for &sg in sigma_grid {
        let w = g.effective_exponent(kernel, Complex64::new(sg, 0.0));
        if w.re == 1.0 {
            // The truncated integral is log X there; no finite limit to classify.
            flags.push(format!("skipped sigma={sg} at the kernel singularity"));
            continue;
        }
        check_exponent(w)?;
        sigmas.push(sg);
        ws.push(w.re);
    }
    if sigmas.is_empty() {
        return Err(Error::domain("estimate_sigma_c", "every grid point sits on the kernel singularity"));
    }
    let raw = real_traces(g, &ws, x_schedule);

    let mut traces = Vec::with_capacity(sigmas.len());
    for ((&sigma, &w), values) in sigmas.iter().zip(&ws).zip(raw) {
        let points: Vec<TracePoint> = x_schedule
            .iter()
            .zip(&values)
            .map(|(&x, &value)| TracePoint {
                x,
                value,
                tail_estimate: tail(g, Complex64::new(w, 0.0), x, (x / 10).max(1)).0,
            })
            .collect();
        let incs: Vec<(f64, f64)> = x_schedule
            .windows(2)
            .zip(values.windows(2))
            .map(|(xs, vs)| {
                let (a, b) = (xs[0] as f64, xs[1] as f64);
                let per_log = (vs[1] - vs[0]).abs() / (b / a).ln();
                (0.5 * (a.ln() + b.ln()), per_log)
            })
            .collect();
        let tail_incs = &incs[incs.len().saturating_sub(opts.fit_increments.max(2))..];
        let fit: Vec<(f64, f64)> = tail_incs
            .iter()
            .filter(|p| p.1 > 0.0)
            .map(|&(lx, d)| (lx, d.ln()))
            .collect();
        let (decay_slope, class) = if tail_incs.iter().all(|p| p.1 == 0.0) {
            (f64::NEG_INFINITY, Convergence::Converging)
        } else if fit.len() < 2 {
            (f64::NAN, Convergence::Inconclusive)
        } else {
            let slope = least_squares_slope(&fit);
            let class = if slope < -opts.slope_tolerance {
                Convergence::Converging
            } else if slope > opts.slope_tolerance {
                Convergence::Diverging
            } else {
                Convergence::Inconclusive
            };
            (slope, class)
        };
        let cauchy_settled = values
            .windows(2)
            .rev()
            .take(3)
            .all(|v| (v[1] - v[0]).abs() < opts.cauchy_tolerance);
        traces.push(SigmaTrace {
            sigma,
            points,
            decay_slope,
            cauchy_settled,
            class,
        });
    }

    let first_tail_converging = traces
        .iter()
        .rposition(|t| t.class != Convergence::Converging)
        .map_or(0, |i| i + 1);
    let upper = traces.get(first_tail_converging).map_or(f64::INFINITY, |t| t.sigma);
    let lower = traces[..first_tail_converging]
        .iter()
        .rposition(|t| t.class == Convergence::Diverging)
        .map_or(f64::NEG_INFINITY, |i| traces[i].sigma);
    if upper.is_infinite() {
        flags.push("no converging grid point above the bracket".to_string());
    }
    if lower.is_infinite() {
        flags.push("no diverging grid point below the bracket".to_string());
    }
    let inside_inconclusive = traces
        .iter()
        .any(|t| t.sigma > lower && t.sigma < upper && t.class == Convergence::Inconclusive);
    if inside_inconclusive {
        flags.push("bracket widened over inconclusive grid points".to_string());
    }
    let non_monotone = traces
        .iter()
        .any(|t| t.sigma < lower && t.class == Convergence::Converging);
    if non_monotone {
        flags.push("converging classification below a diverging one".to_string());
    }
    flags.push(format!(
        "classification: increment decay slope over the last {} steps, tolerance {}",
        opts.fit_increments, opts.slope_tolerance
    ));
    Ok(SigmaCEstimate {
        kind: g.kind,
        kernel,
        traces,
        lower,
        upper,
        conclusive: lower.is_finite() && upper.is_finite() && !inside_inconclusive && !non_monotone,
        flags,
    })
}
