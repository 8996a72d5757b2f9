//! Sign scans of the Pólya sum P(x) = Σ_{n≤x} λ(n) and the Turán sum
//! T(x) = Σ_{n≤x} λ(n)/n, with resumable plain-text checkpoints.
//!
//! Checkpoint layout, one `key=value` per line after a header line:
//!
//! ```text
//! liouville-scan-checkpoint v1
//! limit=1000000000
//! segment_size=1048576
//! last_segment=41
//! P=-1735
//! T=0x1.5f2ep-12 0x1.3p-66
//! polya=<min> <argmin> <first_violation|none> <sign_changes> <last_sign>
//! turan=<min> <argmin> <first_violation|none> <sign_changes> <last_sign>
//! ```
//!
//! Floating-point fields are hexadecimal floats so a resumed scan continues
//! from bit-identical state. `T` stores both words of the compensated sum.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::sieve::{Sieve, SieveConfig};
use super::MAX_N;
use crate::error::{Error, Result};
use crate::hexfloat;
use crate::summation::Compensated;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignScanReport {
    pub limit: u64,
    /// Smallest witness of the property failing, if one was found.
    pub first_violation: Option<u64>,
    pub min_value: f64,
    /// Smallest index attaining `min_value`.
    pub argmin: u64,
    /// Sign flips between nonzero lattice values; zeros carry the previous sign.
    pub sign_change_count: u64,
}

#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub sieve: SieveConfig,
    pub checkpoint: Option<PathBuf>,
    /// Write the checkpoint after every this many segments.
    pub checkpoint_every: u64,
    /// Stop after this many segments in this invocation (the checkpoint
    /// allows a later call to continue).
    pub max_segments: Option<u64>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            sieve: SieveConfig {
                segment_size: 1 << 18,
                ..SieveConfig::default()
            },
            checkpoint: None,
            checkpoint_every: 16,
            max_segments: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanOutcome {
    pub polya: SignScanReport,
    pub turan: SignScanReport,
    /// Last integer folded into the sums.
    pub scanned_to: u64,
    pub complete: bool,
    /// Segment index the scan resumed at, when a checkpoint was loaded.
    pub resumed_at: Option<u64>,
    pub final_p: i64,
    pub final_t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Tracker {
    min: f64,
    argmin: u64,
    first_violation: Option<u64>,
    sign_changes: u64,
    last_sign: i8,
}

impl Tracker {
    fn new() -> Self {
        Self {
            min: f64::INFINITY,
            argmin: 0,
            first_violation: None,
            sign_changes: 0,
            last_sign: 0,
        }
    }

    #[inline]
    fn observe(&mut self, x: u64, value: f64, violated: bool) {
        if value < self.min {
            self.min = value;
            self.argmin = x;
        }
        if violated && self.first_violation.is_none() {
            self.first_violation = Some(x);
        }
        let sign = if value > 0.0 {
            1
        } else if value < 0.0 {
            -1
        } else {
            0
        };
        if sign != 0 {
            if self.last_sign != 0 && sign != self.last_sign {
                self.sign_changes += 1;
            }
            self.last_sign = sign;
        }
    }

    fn report(&self, limit: u64) -> SignScanReport {
        SignScanReport {
            limit,
            first_violation: self.first_violation,
            min_value: self.min,
            argmin: self.argmin,
            sign_change_count: self.sign_changes,
        }
    }

    fn encode(&self) -> String {
        let fv = self
            .first_violation
            .map_or_else(|| "none".to_string(), |v| v.to_string());
        format!(
            "{} {} {} {} {}",
            hexfloat::format(self.min),
            self.argmin,
            fv,
            self.sign_changes,
            self.last_sign
        )
    }

    fn decode(text: &str) -> Option<Self> {
        let f: Vec<&str> = text.split_whitespace().collect();
        if f.len() != 5 {
            return None;
        }
        Some(Self {
            min: hexfloat::parse(f[0]).ok()?,
            argmin: f[1].parse().ok()?,
            first_violation: match f[2] {
                "none" => None,
                v => Some(v.parse().ok()?),
            },
            sign_changes: f[3].parse().ok()?,
            last_sign: f[4].parse().ok()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
struct ScanState {
    limit: u64,
    segment_size: u64,
    last_segment: Option<u64>,
    p: i64,
    t: Compensated,
    polya: Tracker,
    turan: Tracker,
}

const CHECKPOINT_HEADER: &str = "liouville-scan-checkpoint v1";

impl ScanState {
    fn fresh(limit: u64, segment_size: u64) -> Self {
        Self {
            limit,
            segment_size,
            last_segment: None,
            p: 0,
            t: Compensated::new(),
            polya: Tracker::new(),
            turan: Tracker::new(),
        }
    }

    fn to_text(&self) -> String {
        let (t_sum, t_comp) = self.t.parts();
        let mut out = String::new();
        let _ = writeln!(out, "{CHECKPOINT_HEADER}");
        let _ = writeln!(out, "limit={}", self.limit);
        let _ = writeln!(out, "segment_size={}", self.segment_size);
        match self.last_segment {
            Some(k) => {
                let _ = writeln!(out, "last_segment={k}");
            }
            None => {
                let _ = writeln!(out, "last_segment=none");
            }
        }
        let _ = writeln!(out, "P={}", self.p);
        let _ = writeln!(out, "T={} {}", hexfloat::format(t_sum), hexfloat::format(t_comp));
        let _ = writeln!(out, "polya={}", self.polya.encode());
        let _ = writeln!(out, "turan={}", self.turan.encode());
        out
    }

    fn from_text(text: &str, path: &Path) -> Result<Self> {
        let bad = |reason: &str| Error::Checkpoint {
            path: path.to_path_buf(),
            reason: reason.to_string(),
        };
        let mut lines = text.lines();
        if lines.next() != Some(CHECKPOINT_HEADER) {
            return Err(bad("missing header"));
        }
        let mut fields = std::collections::HashMap::new();
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let (k, v) = line.split_once('=').ok_or_else(|| bad("line without '='"))?;
            fields.insert(k.trim(), v.trim());
        }
        let get = |k: &str| fields.get(k).copied().ok_or_else(|| bad(&format!("missing {k}")));
        let int = |k: &str| -> Result<u64> { get(k)?.parse().map_err(|_| bad(&format!("bad {k}"))) };
        let (t_sum, t_comp) = get("T")?
            .split_once(' ')
            .ok_or_else(|| bad("T needs two words"))?;
        Ok(Self {
            limit: int("limit")?,
            segment_size: int("segment_size")?,
            last_segment: match get("last_segment")? {
                "none" => None,
                v => Some(v.parse().map_err(|_| bad("bad last_segment"))?),
            },
            p: get("P")?.parse().map_err(|_| bad("bad P"))?,
            t: Compensated::from_parts(
                hexfloat::parse(t_sum).map_err(|_| bad("bad T"))?,
                hexfloat::parse(t_comp).map_err(|_| bad("bad T"))?,
            ),
            polya: Tracker::decode(get("polya")?).ok_or_else(|| bad("bad polya"))?,
            turan: Tracker::decode(get("turan")?).ok_or_else(|| bad("bad turan"))?,
        })
    }

    fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(self.to_text().as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

/// Scans P(x) for 2 ≤ x ≤ `limit` and T(n) for 1 ≤ n ≤ `limit` in one pass.
pub fn scan(limit: u64, opts: &ScanOptions) -> Result<ScanOutcome> {
    if limit < 2 {
        return Err(Error::domain("scan", "limit must be at least 2"));
    }
    if limit >= MAX_N {
        return Err(Error::domain("scan", "limits at or above 2^63 are rejected"));
    }
    let sieve = Sieve::new(opts.sieve.clone())?;
    let seg = opts.sieve.segment_size as u64;
    let mut state = ScanState::fresh(limit, seg);
    let mut resumed_at = None;
    if let Some(path) = &opts.checkpoint {
        if path.exists() {
            let loaded = ScanState::from_text(&fs::read_to_string(path)?, path)?;
            if loaded.limit != limit || loaded.segment_size != seg {
                return Err(Error::Checkpoint {
                    path: path.clone(),
                    reason: format!(
                        "written for limit={} segment_size={}, asked for limit={limit} segment_size={seg}",
                        loaded.limit, loaded.segment_size
                    ),
                });
            }
            state = loaded;
            resumed_at = Some(state.last_segment.map_or(0, |k| k + 1));
        }
    }
    let first = state.last_segment.map_or(0, |k| k + 1);
    let total = sieve.segment_count(1, limit + 1);
    let stop = opts.max_segments.map_or(total, |m| (first + m).min(total));
    let every = opts.checkpoint_every.max(1);

    // Segments past `stop` are never visited, so bound the sieve range.
    let hi = (1 + stop * seg).min(limit + 1);
    if first < stop {
        sieve.for_each_segment(1, hi, first, |k, start, values| {
            for (n, &lam) in (start..).zip(values) {
                state.p += lam as i64;
                state.t.add(lam as f64 / n as f64);
                if n >= 2 {
                    let p = state.p as f64;
                    state.polya.observe(n, p, p > 0.0);
                }
                let t = state.t.value();
                state.turan.observe(n, t, t <= 0.0);
            }
            state.last_segment = Some(k);
            if let Some(path) = &opts.checkpoint {
                if (k + 1) % every == 0 || k + 1 == stop {
                    state.save(path)?;
                }
            }
            Ok(())
        })?;
    }
    let scanned_to = state.last_segment.map_or(0, |k| ((k + 1) * seg).min(limit));
    Ok(ScanOutcome {
        polya: state.polya.report(limit),
        turan: state.turan.report(limit),
        scanned_to,
        complete: scanned_to == limit,
        resumed_at,
        final_p: state.p,
        final_t: state.t.value(),
    })
}

/// Smallest x in [2, limit] with P(x) > 0, plus min/argmin and sign changes of P.
pub fn scan_polya(limit: u64) -> Result<SignScanReport> {
    if limit < 2 {
        return Err(Error::domain("scan_polya", "limit must be at least 2"));
    }
    Ok(scan(limit, &ScanOptions::default())?.polya)
}

/// Smallest n ≤ limit with T(n) ≤ 0, plus min/argmin and sign changes of T.
pub fn scan_turan(limit: u64) -> Result<SignScanReport> {
    match limit {
        0 => Err(Error::domain("scan_turan", "limit must be at least 1")),
        1 => Ok(SignScanReport {
            limit: 1,
            first_violation: None,
            min_value: 1.0,
            argmin: 1,
            sign_change_count: 0,
        }),
        _ => Ok(scan(limit, &ScanOptions::default())?.turan),
    }
}

#[derive(Serialize)]
struct LambdaRow {
    n: u64,
    lambda: i8,
    #[serde(rename = "P")]
    p: i64,
    #[serde(rename = "T")]
    t: f64,
}

/// Writes `(n, lambda, P, T)` rows for n in `[lo, hi)`, every `stride`-th n
/// counted from `lo`. The sums always start at n = 1.
pub fn write_lambda_csv<W: Write>(out: W, lo: u64, hi: u64, stride: u64, sieve: &SieveConfig) -> Result<()> {
    if stride == 0 {
        return Err(Error::domain("write_lambda_csv", "stride must be positive"));
    }
    if lo == 0 || hi <= lo {
        return Err(Error::domain("write_lambda_csv", "need 1 <= lo < hi"));
    }
    let mut w = csv::Writer::from_writer(out);
    let mut p = 0i64;
    let mut t = Compensated::new();
    Sieve::new(sieve.clone())?.for_each_segment(1, hi, 0, |_, start, values| {
        for (n, &lam) in (start..).zip(values) {
            p += lam as i64;
            t.add(lam as f64 / n as f64);
            if n >= lo && (n - lo).is_multiple_of(stride) {
                w.serialize(LambdaRow {
                    n,
                    lambda: lam,
                    p,
                    t: t.value(),
                })?;
            }
        }
        Ok(())
    })?;
    w.flush()?;
    Ok(())
}
