//! The `lzeta` command line.
//!
//! Every subcommand can also be driven from a flat `key=value` file passed
//! with `--config`; keys are long flag names and `command=` picks the
//! subcommand. Flags on the command line win over the file.
//!
//! Exit status: 0 on success, 1 when a computation rejects its input, 2 for
//! usage errors. `verify` also exits 1 when a gated case fails.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::integral::{estimate_sigma_c, integrate_step, Kernel, SigmaCOptions, StepFunction, StepKind};
use crate::lab::{default_points, Lab, TolerancePolicy, VerificationCase};
use crate::liouville::{scan, write_lambda_csv, ScanOptions, SieveConfig};
use crate::sums::PrefixTable;
use crate::xi::{check_monotone_limit, log_grid, write_xi_csv, XiSequence};
use crate::zeta::{zeta_with, ZetaParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "lzeta", version, about = "Liouville sums, zeta ratios and Dirichlet integrals")]
pub struct RunConfig {
    /// Worker threads; affects speed only.
    #[arg(long, global = true, value_parser = parse_count)]
    pub threads: Option<u64>,

    /// Absolute tolerance floor for gated checks.
    #[arg(long, global = true, value_parser = parse_positive)]
    pub tolerance: Option<f64>,

    #[arg(long, global = true)]
    pub quiet: bool,

    /// Flat key=value file; command-line flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Output file (default stdout).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// λ(n) with running P and T as CSV.
    Sieve(SieveArgs),
    /// F_x(1/2), F_x(1) and L_x(ξ) as CSV.
    Sums(SumsArgs),
    /// ξ(n) and its defining-equation residual on a log grid.
    Xi(XiArgs),
    /// ζ(s) with an error estimate.
    Zeta(ZetaArgs),
    /// Truncated Dirichlet integral of a step function.
    Integrate(IntegrateArgs),
    /// Identity checks; exits 1 if a gated case fails.
    Verify(VerifyArgs),
    /// Sign scans of P(x) and T(x).
    Scan(ScanArgs),
    /// Empirical abscissa of convergence.
    #[command(name = "sigma-c")]
    SigmaC(SigmaCArgs),
}

#[derive(Debug, Args)]
pub struct SieveArgs {
    #[arg(long, default_value = "1", value_parser = parse_count)]
    pub lo: u64,
    /// Inclusive upper end.
    #[arg(long, default_value = "1000", value_parser = parse_count)]
    pub hi: u64,
    #[arg(long, default_value = "1", value_parser = parse_count)]
    pub stride: u64,
    #[arg(long, value_parser = parse_count)]
    pub segment_size: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SumsArgs {
    #[arg(long = "X", default_value = "1000", value_parser = parse_count)]
    pub x: u64,
    /// Rows at multiples of the stride (plus x = 1 and X); powers of two
    /// when omitted.
    #[arg(long, value_parser = parse_count)]
    pub stride: Option<u64>,
}

#[derive(Debug, Args)]
pub struct XiArgs {
    #[arg(long, default_value = "1e6", value_parser = parse_count)]
    pub n_max: u64,
    #[arg(long, default_value = "10", value_parser = parse_count)]
    pub per_decade: u64,
    #[arg(long, default_value = "0.5", allow_hyphen_values = true, value_parser = parse_finite)]
    pub alpha: f64,
    #[arg(long, default_value = "1", allow_hyphen_values = true, value_parser = parse_finite)]
    pub beta: f64,
    /// Also check strict monotonicity on [2, N] and report the gap.
    #[arg(long, value_parser = parse_count)]
    pub monotone_to: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ZetaArgs {
    /// RE,IM or RE.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub s: Complex64,
    /// Euler–Maclaurin cutoff.
    #[arg(long = "N", value_parser = parse_count)]
    pub cutoff: Option<u64>,
    /// Number of Bernoulli corrections.
    #[arg(long, value_parser = parse_count)]
    pub bern: Option<u64>,
}

#[derive(Debug, Args)]
pub struct IntegrateArgs {
    /// F_half, F_one, L_xi, T_sum, P_over_u or one.
    #[arg(long, default_value = "F_half", value_parser = parse_kind)]
    pub kind: StepKind,
    /// shifted (u^{-s-1/2}) or plain (u^{-s}); defaults to the kind's pairing.
    #[arg(long, value_parser = parse_kernel)]
    pub kernel: Option<Kernel>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub s: Complex64,
    #[arg(long = "X", default_value = "1e6", value_parser = parse_count)]
    pub x: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Every case at every point.
    #[arg(long)]
    pub all: bool,
    /// lemma-an, eq-gt1, lemma-integral, theorem-main, theorem-main-collapse
    /// or zeta-identity; repeatable.
    #[arg(long = "case")]
    pub cases: Vec<String>,
    /// Evaluation points; defaults to 2, 3, 1.5+2i, 0.75, 0.6+1i.
    #[arg(long = "s", allow_hyphen_values = true, value_parser = parse_complex)]
    pub points: Vec<Complex64>,
    #[arg(long = "X", default_value = "1e6", value_parser = parse_count)]
    pub x: u64,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub polya: bool,
    #[arg(long)]
    pub turan: bool,
    #[arg(long, default_value = "1e6", value_parser = parse_count)]
    pub limit: u64,
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    #[arg(long, value_parser = parse_count)]
    pub checkpoint_every: Option<u64>,
    /// Stop after this many segments; resume later from the checkpoint.
    #[arg(long, value_parser = parse_count)]
    pub max_segments: Option<u64>,
    #[arg(long, value_parser = parse_count)]
    pub segment_size: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SigmaCArgs {
    #[arg(long, default_value = "F_one", value_parser = parse_kind)]
    pub kind: StepKind,
    #[arg(long, value_parser = parse_kernel)]
    pub kernel: Option<Kernel>,
    /// lo:hi:step
    #[arg(long, default_value = "0.3:0.7:0.04", value_parser = parse_grid)]
    pub grid: SigmaGrid,
    /// Largest X; the schedule runs over half decades from 10^3.
    #[arg(long = "X", default_value = "1e6", value_parser = parse_count)]
    pub x: u64,
}

/// Accepts plain integers and exact scientific notation such as `1e6`.
pub fn parse_count(text: &str) -> std::result::Result<u64, String> {
    let t = text.trim();
    if let Ok(v) = t.parse::<u64>() {
        return Ok(v);
    }
    let v: f64 = t.parse().map_err(|_| format!("`{t}` is not a number"))?;
    if !(v >= 0.0) || v.fract() != 0.0 || v >= 18_446_744_073_709_551_616.0 {
        return Err(format!("`{t}` is not a non-negative integer"));
    }
    Ok(v as u64)
}

fn parse_finite(text: &str) -> std::result::Result<f64, String> {
    let v: f64 = text.trim().parse().map_err(|_| format!("`{text}` is not a number"))?;
    if !v.is_finite() {
        return Err(format!("`{text}` is not finite"));
    }
    Ok(v)
}

fn parse_positive(text: &str) -> std::result::Result<f64, String> {
    let v = parse_finite(text)?;
    if v <= 0.0 {
        return Err(format!("`{text}` must be positive"));
    }
    Ok(v)
}

/// `RE,IM` or `RE`.
pub fn parse_complex(text: &str) -> std::result::Result<Complex64, String> {
    let mut parts = text.split(',');
    let re = parse_finite(parts.next().unwrap_or(""))?;
    let im = match parts.next() {
        Some(p) => parse_finite(p)?,
        None => 0.0,
    };
    if parts.next().is_some() {
        return Err(format!("`{text}`: expected RE,IM"));
    }
    Ok(Complex64::new(re, im))
}

fn parse_kind(text: &str) -> std::result::Result<StepKind, String> {
    StepKind::parse(text).ok_or_else(|| format!("unknown step function `{text}`"))
}

fn parse_kernel(text: &str) -> std::result::Result<Kernel, String> {
    Kernel::parse(text).ok_or_else(|| format!("unknown kernel `{text}`, expected shifted or plain"))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SigmaGrid(pub Vec<f64>);

/// `lo:hi:step`, with grid points rounded to 1e-9 so that decimal steps land
/// on the intended values.
pub fn parse_grid(text: &str) -> std::result::Result<SigmaGrid, String> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("`{text}`: expected lo:hi:step"));
    }
    let (lo, hi, step) = (parse_finite(parts[0])?, parse_finite(parts[1])?, parse_finite(parts[2])?);
    if !(step > 0.0) || hi < lo {
        return Err(format!("`{text}`: need lo <= hi and step > 0"));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    if count > 10_000 {
        return Err(format!("`{text}`: more than 10000 grid points"));
    }
    Ok(SigmaGrid(
        (0..count)
            .map(|k| ((lo + k as f64 * step) * 1e9).round() / 1e9)
            .collect(),
    ))
}

const SUBCOMMANDS: [&str; 8] = ["sieve", "sums", "xi", "zeta", "integrate", "verify", "scan", "sigma-c"];

/// Global options that take a value, for locating the subcommand token.
const VALUED_GLOBALS: [&str; 5] = ["--threads", "--tolerance", "--config", "--out", "--format"];

fn config_path(args: &[String]) -> Option<String> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

fn subcommand_position(args: &[String]) -> Option<usize> {
    let mut i = 1;
    while i < args.len() {
        let a = args[i].as_str();
        if SUBCOMMANDS.contains(&a) {
            return Some(i);
        }
        if VALUED_GLOBALS.contains(&a) {
            i += 1;
        }
        i += 1;
    }
    None
}

fn given_on_command_line(args: &[String], key: &str) -> bool {
    let flag = format!("--{key}");
    let prefixed = format!("{flag}=");
    args.iter().any(|a| *a == flag || a.starts_with(&prefixed))
}

/// Splices `key=value` lines from the config file into the argument list.
/// Blank lines and `#` comments are ignored; `true`/`false` toggle flags.
pub fn merge_config(args: Vec<String>, text: &str) -> std::result::Result<Vec<String>, String> {
    let mut command = None;
    let mut extra = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| format!("config line {}: expected key=value", lineno + 1))?;
        if key == "command" {
            command = Some(value.to_string());
            continue;
        }
        if key == "config" || given_on_command_line(&args, key) {
            continue;
        }
        match value {
            "true" => extra.push(format!("--{key}")),
            "false" => {}
            _ => {
                extra.push(format!("--{key}"));
                extra.push(value.to_string());
            }
        }
    }
    let mut merged = args;
    match subcommand_position(&merged) {
        Some(pos) => {
            let tail = merged.split_off(pos + 1);
            merged.extend(extra);
            merged.extend(tail);
        }
        None => {
            let command = command.ok_or("no subcommand on the command line or in the config file")?;
            merged.push(command);
            merged.extend(extra);
        }
    }
    Ok(merged)
}

enum Failure {
    Usage(String),
    Run(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Run(Error::Io(e))
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit status.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<String> = args
        .into_iter()
        .map(|a| a.into().to_string_lossy().into_owned())
        .collect();
    let args = match config_path(&args) {
        Some(path) => match std::fs::read_to_string(&path)
            .map_err(|e| format!("cannot read config {path}: {e}"))
            .and_then(|text| merge_config(args, &text))
        {
            Ok(a) => a,
            Err(msg) => {
                eprintln!("error: {msg}");
                return EXIT_USAGE;
            }
        },
        None => args,
    };
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(&config) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Run(e)) => {
            eprintln!("error: {e}");
            EXIT_FAILURE
        }
    }
}

pub fn main_exit() -> ! {
    std::process::exit(run_from(std::env::args_os()))
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

struct Ctx<'a> {
    config: &'a RunConfig,
}

impl Ctx<'_> {
    fn note(&self, msg: impl AsRef<str>) {
        if !self.config.quiet {
            eprintln!("{}", msg.as_ref());
        }
    }

    fn format(&self, default: Format) -> Format {
        self.config.format.unwrap_or(default)
    }

    fn only(&self, allowed: Format, command: &str) -> std::result::Result<(), Failure> {
        match self.config.format {
            Some(f) if f != allowed => Err(usage(format!(
                "{command} writes {} only",
                if allowed == Format::Csv { "csv" } else { "json" }
            ))),
            _ => Ok(()),
        }
    }

    fn output(&self) -> io::Result<Box<dyn Write>> {
        Ok(match &self.config.out {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }

    fn json<T: Serialize>(&self, value: &T) -> std::result::Result<(), Failure> {
        let mut out = self.output()?;
        serde_json::to_writer_pretty(&mut out, value).map_err(Error::from)?;
        writeln!(out)?;
        out.flush()?;
        Ok(())
    }

    fn sieve_config(&self, segment_size: Option<u64>) -> std::result::Result<SieveConfig, Failure> {
        let mut cfg = SieveConfig::default();
        if let Some(size) = segment_size {
            if size == 0 || size > 1 << 30 {
                return Err(usage("--segment-size must be in [1, 2^30]"));
            }
            cfg.segment_size = size as usize;
        }
        Ok(cfg)
    }
}

fn init_threads(threads: Option<u64>) -> std::result::Result<(), Failure> {
    if let Some(n) = threads {
        if n == 0 || n > 4096 {
            return Err(usage("--threads must be in [1, 4096]"));
        }
        // Fails only when a global pool already exists, e.g. in-process tests.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global();
    }
    Ok(())
}

fn run(config: &RunConfig) -> std::result::Result<i32, Failure> {
    init_threads(config.threads)?;
    let ctx = Ctx { config };
    match &config.command {
        Command::Sieve(a) => sieve_cmd(&ctx, a),
        Command::Sums(a) => sums_cmd(&ctx, a),
        Command::Xi(a) => xi_cmd(&ctx, a),
        Command::Zeta(a) => zeta_cmd(&ctx, a),
        Command::Integrate(a) => integrate_cmd(&ctx, a),
        Command::Verify(a) => verify_cmd(&ctx, a),
        Command::Scan(a) => scan_cmd(&ctx, a),
        Command::SigmaC(a) => sigma_c_cmd(&ctx, a),
    }
}

fn sieve_cmd(ctx: &Ctx, a: &SieveArgs) -> std::result::Result<i32, Failure> {
    ctx.only(Format::Csv, "sieve")?;
    if a.lo == 0 || a.hi < a.lo {
        return Err(usage("need 1 <= --lo <= --hi"));
    }
    let cfg = ctx.sieve_config(a.segment_size)?;
    let mut out = ctx.output()?;
    write_lambda_csv(&mut out, a.lo, a.hi + 1, a.stride, &cfg)?;
    out.flush()?;
    Ok(EXIT_OK)
}

fn sums_cmd(ctx: &Ctx, a: &SumsArgs) -> std::result::Result<i32, Failure> {
    ctx.only(Format::Csv, "sums")?;
    let table = PrefixTable::compute(a.x)?;
    let mut out = ctx.output()?;
    table.write_csv(&mut out, a.stride)?;
    out.flush()?;
    ctx.note(format!(
        "F_X(1) + 1 = {:e} at X = {}",
        table.f_one[(a.x - 1) as usize] + 1.0,
        a.x
    ));
    Ok(EXIT_OK)
}

fn xi_cmd(ctx: &Ctx, a: &XiArgs) -> std::result::Result<i32, Failure> {
    let seq = XiSequence::new(a.alpha, a.beta)?;
    if a.per_decade == 0 || a.per_decade > 1000 {
        return Err(usage("--per-decade must be in [1, 1000]"));
    }
    let grid = log_grid(a.n_max, a.per_decade as u32);
    if grid.is_empty() {
        return Err(Error::domain("xi", "n_max must be at least 2").into());
    }
    let monotone = a.monotone_to.map(|n| check_monotone_limit(&seq, n)).transpose()?;
    match ctx.format(Format::Csv) {
        Format::Csv => {
            let mut out = ctx.output()?;
            write_xi_csv(&mut out, &seq, &grid)?;
            out.flush()?;
            if let Some(m) = &monotone {
                ctx.note(format!(
                    "monotone on [2, {}]: {}; gap {:.6} (log log n / log n = {:.6})",
                    m.n_max, m.monotone, m.gap, m.leading_term
                ));
            }
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                n: u64,
                xi: f64,
                residual: f64,
            }
            #[derive(Serialize)]
            struct Report {
                alpha: f64,
                beta: f64,
                grid: Vec<Row>,
                monotone: Option<crate::xi::MonotoneReport>,
            }
            let rows = grid
                .iter()
                .map(|&n| {
                    Ok(Row {
                        n,
                        xi: seq.xi(n)?,
                        residual: seq.residual(n)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            ctx.json(&Report {
                alpha: a.alpha,
                beta: a.beta,
                grid: rows,
                monotone,
            })?;
        }
    }
    Ok(EXIT_OK)
}

fn zeta_cmd(ctx: &Ctx, a: &ZetaArgs) -> std::result::Result<i32, Failure> {
    let mut params = ZetaParams::for_s(a.s);
    if let Some(n) = a.cutoff {
        params.cutoff = n;
    }
    if let Some(b) = a.bern {
        params.bernoulli_terms = b as usize;
    }
    if let Some(t) = ctx.config.tolerance {
        params.target_abs_error = t;
    }
    let eval = zeta_with(a.s, &params)?;
    match ctx.config.format {
        Some(Format::Csv) => {
            let mut out = ctx.output()?;
            writeln!(out, "s_re,s_im,re,im,error_estimate")?;
            writeln!(
                out,
                "{},{},{},{},{}",
                a.s.re, a.s.im, eval.value.re, eval.value.im, eval.error_estimate
            )?;
            out.flush()?;
        }
        Some(Format::Json) => {
            #[derive(Serialize)]
            struct Report {
                s_re: f64,
                s_im: f64,
                re: f64,
                im: f64,
                error_estimate: f64,
                cutoff: u64,
                bernoulli_terms: usize,
            }
            ctx.json(&Report {
                s_re: a.s.re,
                s_im: a.s.im,
                re: eval.value.re,
                im: eval.value.im,
                error_estimate: eval.error_estimate,
                cutoff: params.cutoff,
                bernoulli_terms: params.bernoulli_terms,
            })?;
        }
        None => {
            let mut out = ctx.output()?;
            let v = eval.value;
            let sign = if v.im < 0.0 { '-' } else { '+' };
            writeln!(out, "{:.15} {sign} {:.15}i ± {:.1e}", v.re, v.im.abs(), eval.error_estimate)?;
            out.flush()?;
        }
    }
    Ok(EXIT_OK)
}

fn integrate_cmd(ctx: &Ctx, a: &IntegrateArgs) -> std::result::Result<i32, Failure> {
    let kernel = a.kernel.unwrap_or_else(|| a.kind.default_kernel());
    let g = match a.kind {
        StepKind::Constant => StepFunction::constant(1.0),
        kind => StepFunction::from_prefix(kind, &PrefixTable::compute(a.x)?),
    };
    let r = integrate_step(&g, kernel, a.s, a.x)?;
    let tolerance = ctx.config.tolerance.unwrap_or(crate::integral::DEFAULT_TAIL_TOLERANCE);
    #[derive(Serialize)]
    struct Row {
        kind: &'static str,
        kernel: &'static str,
        s_re: f64,
        s_im: f64,
        #[serde(rename = "X")]
        x: u64,
        re: f64,
        im: f64,
        tail_estimate: f64,
        converged: bool,
    }
    let row = Row {
        kind: a.kind.name(),
        kernel: match kernel {
            Kernel::Shifted => "shifted",
            Kernel::Plain => "plain",
        },
        s_re: a.s.re,
        s_im: a.s.im,
        x: a.x,
        re: r.value.re,
        im: r.value.im,
        tail_estimate: r.tail_estimate,
        converged: r.converged_within(tolerance),
    };
    match ctx.format(Format::Json) {
        Format::Json => ctx.json(&row)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(ctx.output()?);
            w.serialize(&row).map_err(Error::from)?;
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

fn verify_cmd(ctx: &Ctx, a: &VerifyArgs) -> std::result::Result<i32, Failure> {
    ctx.only(Format::Json, "verify")?;
    if !a.all && a.cases.is_empty() {
        return Err(usage("verify needs --all or at least one --case"));
    }
    let points = if a.points.is_empty() { default_points() } else { a.points.clone() };
    let mut policy = TolerancePolicy::default();
    if let Some(t) = ctx.config.tolerance {
        policy.floor = t;
    }
    let lab = Lab::new(a.x)?.with_policy(policy);
    let mut cases: Vec<VerificationCase> = if a.all { lab.run_all(&points, a.x)? } else { Vec::new() };
    for name in &a.cases {
        match name.as_str() {
            "lemma-an" => cases.push(lab.lemma_an(a.x)?),
            "eq-gt1" | "lemma-integral" | "theorem-main" | "theorem-main-collapse" | "zeta-identity" => {
                for &s in &points {
                    cases.push(match name.as_str() {
                        "eq-gt1" => lab.eq_gt1(s, a.x)?,
                        "lemma-integral" => lab.lemma_integral(s, a.x)?,
                        "theorem-main" => lab.theorem_main(s, a.x)?,
                        "theorem-main-collapse" => lab.theorem_main_collapse(s, a.x)?,
                        _ => lab.zeta_identity(s, a.x)?,
                    });
                }
            }
            other => return Err(usage(format!("unknown case `{other}`"))),
        }
    }
    cases.sort_by(|x, y| x.name.cmp(&y.name));
    cases.dedup_by(|x, y| x.name == y.name);
    ctx.json(&cases)?;
    let mut gated_fail = 0;
    for c in &cases {
        let status = match (c.pass, c.is_gating()) {
            (true, _) => "pass",
            (false, true) => {
                gated_fail += 1;
                "FAIL"
            }
            (false, false) => "outside band (not gated)",
        };
        ctx.note(format!("{:<48} residual {:.3e} tol {:.1e} {status}", c.name, c.residual, c.tolerance));
    }
    Ok(if gated_fail == 0 { EXIT_OK } else { EXIT_FAILURE })
}

fn scan_cmd(ctx: &Ctx, a: &ScanArgs) -> std::result::Result<i32, Failure> {
    let mut opts = ScanOptions::default();
    if let Some(size) = a.segment_size {
        opts.sieve = ctx.sieve_config(Some(size))?;
    }
    opts.checkpoint = a.checkpoint.clone();
    if let Some(every) = a.checkpoint_every {
        if every == 0 {
            return Err(usage("--checkpoint-every must be positive"));
        }
        opts.checkpoint_every = every;
    }
    opts.max_segments = a.max_segments;
    let (want_p, want_t) = match (a.polya, a.turan) {
        (false, false) => (true, true),
        both => both,
    };
    let outcome = scan(a.limit, &opts)?;
    match ctx.config.format {
        Some(Format::Json) => {
            #[derive(Serialize)]
            struct Report<'a> {
                scanned_to: u64,
                complete: bool,
                resumed_at: Option<u64>,
                polya: Option<&'a crate::liouville::SignScanReport>,
                turan: Option<&'a crate::liouville::SignScanReport>,
            }
            ctx.json(&Report {
                scanned_to: outcome.scanned_to,
                complete: outcome.complete,
                resumed_at: outcome.resumed_at,
                polya: want_p.then_some(&outcome.polya),
                turan: want_t.then_some(&outcome.turan),
            })?;
        }
        Some(Format::Csv) => return Err(usage("scan writes text or json")),
        None => {
            let mut out = ctx.output()?;
            writeln!(out, "scanned_to={} complete={}", outcome.scanned_to, outcome.complete)?;
            for (name, wanted, r) in [("polya", want_p, &outcome.polya), ("turan", want_t, &outcome.turan)] {
                if !wanted {
                    continue;
                }
                let first = r.first_violation.map_or("none".to_string(), |v| v.to_string());
                writeln!(
                    out,
                    "{name}: first_violation={first} min={} argmin={} sign_changes={}",
                    r.min_value, r.argmin, r.sign_change_count
                )?;
            }
            out.flush()?;
        }
    }
    if !outcome.complete {
        ctx.note("scan stopped early; rerun with the same checkpoint to continue");
    }
    Ok(EXIT_OK)
}

/// 10^3, 10^3.5, ..., up to `x_max` (always included).
pub fn half_decade_schedule(x_max: u64) -> Vec<u64> {
    let mut xs = Vec::new();
    let mut k = 0;
    loop {
        let x = (1000.0 * 10f64.powf(k as f64 / 2.0)).round() as u64;
        if x >= x_max {
            break;
        }
        xs.push(x);
        k += 1;
    }
    xs.push(x_max);
    xs
}

fn sigma_c_cmd(ctx: &Ctx, a: &SigmaCArgs) -> std::result::Result<i32, Failure> {
    let kernel = a.kernel.unwrap_or_else(|| a.kind.default_kernel());
    let schedule = half_decade_schedule(a.x);
    if schedule.len() < 4 {
        return Err(usage("--X must be at least 10^4.5 for a four-point schedule"));
    }
    let g = match a.kind {
        StepKind::Constant => StepFunction::constant(1.0),
        kind => StepFunction::from_prefix(kind, &PrefixTable::compute(a.x)?),
    };
    let est = estimate_sigma_c(&g, kernel, &a.grid.0, &schedule, &SigmaCOptions::default())?;
    match ctx.format(Format::Csv) {
        Format::Csv => {
            let mut out = ctx.output()?;
            est.write_csv(&mut out)?;
            out.flush()?;
        }
        Format::Json => ctx.json(&est)?,
    }
    ctx.note(format!(
        "sigma_c in ({}, {}), conclusive: {}{}",
        est.lower,
        est.upper,
        est.conclusive,
        if est.flags.is_empty() {
            String::new()
        } else {
            format!("; {}", est.flags.join("; "))
        }
    ));
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(a: &[&str]) -> Vec<String> {
        a.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn counts_accept_scientific_notation() {
        assert_eq!(parse_count("1e6"), Ok(1_000_000));
        assert_eq!(parse_count("1000"), Ok(1000));
        assert_eq!(parse_count("2.5e1"), Ok(25));
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("-3").is_err());
        assert!(parse_count("1e30").is_err());
        assert_eq!(parse_count("18446744073709551615"), Ok(u64::MAX));
    }

    #[test]
    fn complex_points() {
        assert_eq!(parse_complex("2,0"), Ok(Complex64::new(2.0, 0.0)));
        assert_eq!(parse_complex("0.75"), Ok(Complex64::new(0.75, 0.0)));
        assert_eq!(parse_complex("1.5,-2"), Ok(Complex64::new(1.5, -2.0)));
        assert!(parse_complex("1,2,3").is_err());
        assert!(parse_complex("x").is_err());
    }

    #[test]
    fn grids_land_on_decimals() {
        let g = parse_grid("0.3:0.7:0.04").unwrap().0;
        assert_eq!(g.len(), 11);
        assert_eq!(g[5], 0.5);
        assert_eq!(g[10], 0.7);
        assert!(parse_grid("1:0:0.1").is_err());
    }

    #[test]
    fn schedule() {
        assert_eq!(half_decade_schedule(100_000), vec![1000, 3162, 10_000, 31_623, 100_000]);
        assert_eq!(half_decade_schedule(50_000), vec![1000, 3162, 10_000, 31_623, 50_000]);
    }

    #[test]
    fn config_merge_respects_command_line() {
        let text = "# run\ncommand=verify\nX=1e4\nall=true\nquiet=false\n";
        let merged = merge_config(strings(&["lzeta", "--config", "f", "--threads", "2"]), text).unwrap();
        assert_eq!(merged, strings(&["lzeta", "--config", "f", "--threads", "2", "verify", "--X", "1e4", "--all"]));

        let merged = merge_config(strings(&["lzeta", "verify", "--X", "100"]), text).unwrap();
        assert_eq!(merged, strings(&["lzeta", "verify", "--all", "--X", "100"]));

        assert!(merge_config(strings(&["lzeta"]), "X=10\n").is_err());
        assert!(merge_config(strings(&["lzeta", "zeta"]), "oops\n").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_from(["lzeta", "zeta", "--s", "1,0", "--quiet"]), EXIT_FAILURE);
        assert_eq!(run_from(["lzeta", "zeta"]), EXIT_USAGE);
        assert_eq!(run_from(["lzeta", "verify", "--X", "100"]), EXIT_USAGE);
        assert_eq!(run_from(["lzeta", "sieve", "--format", "json"]), EXIT_USAGE);
        assert_eq!(run_from(["lzeta", "bogus"]), EXIT_USAGE);
    }
}
