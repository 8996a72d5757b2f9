//! Exact text encoding of `f64` values as C99-style hexadecimal floats
//! (`0x1.8p+1`), used by the scan checkpoint format.

use crate::error::{Error, Result};

pub fn format(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let sign = if x.is_sign_negative() { "-" } else { "" };
    if x == 0.0 {
        return format!("{sign}0x0p+0");
    }
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (lead, exp) = if biased == 0 { (0, -1022) } else { (1, biased - 1023) };
    if frac == 0 {
        return format!("{sign}0x{lead}p{exp:+}");
    }
    let digits = format!("{frac:013x}");
    let digits = digits.trim_end_matches('0');
    format!("{sign}0x{lead}.{digits}p{exp:+}")
}

pub fn parse(text: &str) -> Result<f64> {
    let bad = || Error::InvalidParams(format!("malformed hex float {text:?}"));
    let t = text.trim();
    match t {
        "nan" => return Ok(f64::NAN),
        "inf" => return Ok(f64::INFINITY),
        "-inf" => return Ok(f64::NEG_INFINITY),
        _ => {}
    }
    let (negative, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let body = body.strip_prefix("0x").ok_or_else(bad)?;
    let (mantissa, exp) = body.split_once('p').ok_or_else(bad)?;
    let exp: i64 = exp.parse().map_err(|_| bad())?;
    let (lead, digits) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let lead: u64 = match lead {
        "0" => 0,
        "1" => 1,
        _ => return Err(bad()),
    };
    if digits.len() > 13 {
        return Err(bad());
    }
    let frac = if digits.is_empty() {
        0
    } else {
        u64::from_str_radix(digits, 16).map_err(|_| bad())? << (4 * (13 - digits.len()))
    };
    let bits = match (lead, exp) {
        (0, _) if frac == 0 => 0,
        (0, -1022) => frac,
        (1, -1022..=1023) => (((exp + 1023) as u64) << 52) | frac,
        _ => return Err(bad()),
    };
    let value = f64::from_bits(bits);
    Ok(if negative { -value } else { value })
}
