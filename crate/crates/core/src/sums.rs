//! Dirichlet polynomials F_x(α) = Σ_{n≤x} a(n) n^{−α} over the shifted
//! Liouville coefficients, and the weighted sums
//! L_x(ξ) = (β−α) Σ_{n≤x} a(n) log(n) n^{−ξ(n)} = F_x(α) − F_x(β).

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::liouville::{sieve_range, LiouvilleTable};
use crate::summation::Compensated;
use crate::xi::{inv_pow, XiSequence};

/// Streaming evaluator of F_x(α), fed one λ value at a time in ascending n.
#[derive(Debug, Clone)]
pub struct PrefixEvaluator {
    alpha: f64,
    limit: u64,
    acc: Compensated,
    history: Option<Vec<(u64, f64)>>,
}

impl PrefixEvaluator {
    pub fn new(alpha: f64) -> Self {
        Self {
            alpha,
            limit: 0,
            acc: Compensated::new(),
            history: None,
        }
    }

    /// Also record (x, F_x) at every power of two x.
    pub fn with_history(mut self) -> Self {
        self.history = Some(Vec::new());
        self
    }

    /// Extends the sum from `limit` to `limit + 1`.
    #[inline]
    pub fn push(&mut self, lambda: i8) {
        self.limit += 1;
        let n = self.limit;
        if n >= 2 {
            self.acc.add(lambda as f64 * inv_pow(n, self.alpha));
        }
        if let Some(h) = &mut self.history {
            if n.is_power_of_two() {
                h.push((n, self.acc.value()));
            }
        }
    }

    /// Feeds every entry of `table` above the current limit.
    pub fn feed(&mut self, table: &LiouvilleTable) -> Result<()> {
        if table.lo() > self.limit + 1 {
            return Err(Error::domain(
                "PrefixEvaluator::feed",
                format!("table starts at {}, evaluator is at {}", table.lo(), self.limit),
            ));
        }
        let done = self.limit;
        for (_, lam) in table.iter().skip_while(|&(n, _)| n <= done) {
            self.push(lam);
        }
        Ok(())
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn value(&self) -> f64 {
        self.acc.value()
    }

    pub fn history(&self) -> Option<&[(u64, f64)]> {
        self.history.as_deref()
    }
}

/// F_x(α). F_1(α) = 0 for every α because a(1) = 0.
pub fn f_x(alpha: f64, x: u64) -> Result<f64> {
    if x == 0 {
        return Err(Error::domain("f_x", "x must be at least 1"));
    }
    let mut ev = PrefixEvaluator::new(alpha);
    ev.feed(&sieve_range(1, x + 1)?)?;
    Ok(ev.value())
}

/// How L_x(ξ) turns ξ into per-term weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeightMode {
    /// n^{−α} − n^{−β}, no transcendental evaluation of ξ.
    #[default]
    Rearranged,
    /// (β−α) log(n) n^{−ξ(n)} from the closed form of ξ.
    DirectExponent,
}

pub fn l_x(xi: &XiSequence, x: u64) -> Result<f64> {
    l_x_with(xi, x, WeightMode::Rearranged)
}

pub fn l_x_with(xi: &XiSequence, x: u64, mode: WeightMode) -> Result<f64> {
    if x == 0 {
        return Err(Error::domain("l_x", "x must be at least 1"));
    }
    let table = sieve_range(1, x + 1)?;
    let mut acc = Compensated::new();
    for (n, lam) in table.iter().skip(1) {
        let w = match mode {
            WeightMode::Rearranged => xi.weight(n)?,
            WeightMode::DirectExponent => xi.weight_direct(n)?,
        };
        acc.add(lam as f64 * w);
    }
    Ok(acc.value())
}

/// Prefix values at every integer x in `1..=limit`, each column accumulated
/// independently so identities between columns are genuine checks.
///
/// Index `x − 1` holds the value at x.
#[derive(Debug, Clone)]
pub struct PrefixTable {
    limit: u64,
    /// F_x(1/2)
    pub f_half: Vec<f64>,
    /// F_x(1)
    pub f_one: Vec<f64>,
    /// L_x(ξ) for (α, β) = (1/2, 1)
    pub l_xi: Vec<f64>,
    /// T(x) = Σ λ(n)/n
    pub t_sum: Vec<f64>,
    /// P(x) = Σ λ(n)
    pub p_sum: Vec<i64>,
}

impl PrefixTable {
    pub fn compute(limit: u64) -> Result<Self> {
        if limit == 0 {
            return Err(Error::domain("PrefixTable", "limit must be at least 1"));
        }
        Self::from_table(&sieve_range(1, limit + 1)?)
    }

    pub fn from_table(table: &LiouvilleTable) -> Result<Self> {
        if table.lo() != 1 {
            return Err(Error::domain("PrefixTable", "table must start at n = 1"));
        }
        let len = table.len();
        let mut out = Self {
            limit: table.hi() - 1,
            f_half: Vec::with_capacity(len),
            f_one: Vec::with_capacity(len),
            l_xi: Vec::with_capacity(len),
            t_sum: Vec::with_capacity(len),
            p_sum: Vec::with_capacity(len),
        };
        let (mut fh, mut f1, mut l, mut t) = (
            Compensated::new(),
            Compensated::new(),
            Compensated::new(),
            Compensated::new(),
        );
        let mut p = 0i64;
        for (n, lam) in table.iter() {
            let x = n as f64;
            let sign = lam as f64;
            p += lam as i64;
            t.add(sign / x);
            if n >= 2 {
                let (h, o) = (1.0 / x.sqrt(), 1.0 / x);
                fh.add(sign * h);
                f1.add(sign * o);
                l.add(sign * (h - o));
            }
            out.f_half.push(fh.value());
            out.f_one.push(f1.value());
            out.l_xi.push(l.value());
            out.t_sum.push(t.value());
            out.p_sum.push(p);
        }
        Ok(out)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Sample points: every `stride`-th x if given, else powers of two;
    /// `limit` is always included.
    pub fn sample_points(&self, stride: Option<u64>) -> Vec<u64> {
        let mut xs: Vec<u64> = match stride {
            Some(k) => (1..=self.limit).step_by(k.max(1) as usize).collect(),
            None => std::iter::successors(Some(1u64), |&x| x.checked_mul(2))
                .take_while(|&x| x <= self.limit)
                .collect(),
        };
        if xs.last() != Some(&self.limit) {
            xs.push(self.limit);
        }
        xs
    }

    /// CSV `(x, F_half, F_one, L)`.
    pub fn write_csv<W: Write>(&self, out: W, stride: Option<u64>) -> Result<()> {
        #[derive(Serialize)]
        struct Row {
            x: u64,
            #[serde(rename = "F_half")]
            f_half: f64,
            #[serde(rename = "F_one")]
            f_one: f64,
            #[serde(rename = "L")]
            l: f64,
        }
        let mut w = csv::Writer::from_writer(out);
        for x in self.sample_points(stride) {
            let i = (x - 1) as usize;
            w.serialize(Row {
                x,
                f_half: self.f_half[i],
                f_one: self.f_one[i],
                l: self.l_xi[i],
            })?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Generic Dirichlet polynomial Σ_{n≤x} b(n) n^{−α}, straight summation.
    fn dirichlet_poly(b: impl Fn(u64) -> f64, alpha: f64, x: u64) -> f64 {
        (1..=x).map(|n| b(n) * (n as f64).powf(-alpha)).sum()
    }

    #[test]
    fn hand_values() {
        assert_eq!(f_x(0.5, 1).unwrap(), 0.0);
        assert_eq!(f_x(3.7, 1).unwrap(), 0.0);
        let expected = -(0.5f64.sqrt()) - 1.0 / 3f64.sqrt();
        assert!((f_x(0.5, 3).unwrap() - expected).abs() < 1e-15);
        assert!((expected + 1.284457).abs() < 1e-6);
        assert!(f_x(1.0, 0).is_err());
    }

    #[test]
    fn l_x_small() {
        let xi = XiSequence::half_one();
        assert_eq!(l_x(&xi, 1).unwrap(), 0.0);
        let l2 = l_x(&xi, 2).unwrap();
        assert!((l2 + (0.5f64.sqrt() - 0.5)).abs() < 4.0 * f64::EPSILON);
        assert!((l2 + 0.207107).abs() < 1e-6);
        assert!(l_x(&xi, 0).is_err());
    }

    #[test]
    fn weight_modes_agree() {
        let xi = XiSequence::half_one();
        let a = l_x_with(&xi, 5000, WeightMode::Rearranged).unwrap();
        let b = l_x_with(&xi, 5000, WeightMode::DirectExponent).unwrap();
        assert!((a - b).abs() < 1e-12 * (1.0 + a.abs()));
    }

    #[test]
    fn mvt_identity_for_generic_coefficients() {
        // F_x(β) − F_x(α) = −(β−α) Σ b(n) log(n) n^{−ξ(n)} for any b.
        let b = |n: u64| ((n % 3) as f64 - 1.0) * 0.5 + (n as f64).sin();
        let seq = XiSequence::new(0.3, 1.7).unwrap();
        let x = 2000;
        let lhs = dirichlet_poly(b, 1.7, x) - dirichlet_poly(b, 0.3, x);
        let rhs: f64 = -(2..=x).map(|n| b(n) * seq.weight_direct(n).unwrap()).sum::<f64>();
        assert!((lhs - rhs).abs() < 1e-11);
    }

    #[test]
    fn evaluator_history_and_feed() {
        let table = sieve_range(1, 100).unwrap();
        let mut ev = PrefixEvaluator::new(1.0).with_history();
        ev.feed(&table).unwrap();
        assert_eq!(ev.limit(), 99);
        let h = ev.history().unwrap();
        assert_eq!(h.iter().map(|p| p.0).collect::<Vec<_>>(), vec![1, 2, 4, 8, 16, 32, 64]);
        assert_eq!(h[0].1, 0.0);
        assert_eq!(h[1].1, -0.5);
        let gap = sieve_range(200, 300).unwrap();
        assert!(ev.feed(&gap).is_err());
    }

    #[test]
    fn table_columns() {
        let t = PrefixTable::compute(10).unwrap();
        assert_eq!(t.p_sum, vec![1, 0, -1, 0, -1, 0, -1, -2, -1, 0]);
        assert_eq!(t.f_one[1], -0.5);
        for i in 0..10 {
            assert!((t.f_one[i] - (t.t_sum[i] - 1.0)).abs() < 1e-15);
            assert!((t.f_half[i] - t.f_one[i] - t.l_xi[i]).abs() < 1e-15);
        }
        let mut buf = Vec::new();
        t.write_csv(&mut buf, None).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next(), Some("x,F_half,F_one,L"));
        assert_eq!(text.lines().count(), 1 + 5); // 1, 2, 4, 8, 10
    }
}
