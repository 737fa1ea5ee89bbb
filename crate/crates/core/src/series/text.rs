//! Line-oriented coefficient files.
//!
//! ```text
//! # comment
//! 0 1 0
//! 1 1/2 -3/4
//! ```
//!
//! Each line is `v <re> <im>`; `<im>` may be omitted. Missing indices are
//! zero. Target files may prefix lines with `num` or `den` to describe a
//! rational function; unprefixed lines belong to the numerator.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{parse_rational, ExactComplex, Scalar};

use super::jet::PowerSeriesJet;
use super::poly::Polynomial;
use super::rational::RationalFunction;

fn parse_lines(text: &str) -> Result<BTreeMap<&'static str, BTreeMap<usize, ExactComplex>>> {
    let mut parts: BTreeMap<&'static str, BTreeMap<usize, ExactComplex>> = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
        let mut fields: Vec<&str> = line.split_whitespace().collect();
        let part = match fields[0] {
            "num" => {
                fields.remove(0);
                "num"
            }
            "den" => {
                fields.remove(0);
                "den"
            }
            _ => "num",
        };
        if fields.is_empty() || fields.len() > 3 {
            return Err(err("expected `v <re> [<im>]`"));
        }
        let v: usize = fields[0].parse().map_err(|_| err("bad index"))?;
        let re = fields.get(1).map(|s| parse_rational(s)).transpose()?;
        let im = fields.get(2).map(|s| parse_rational(s)).transpose()?;
        let re = re.ok_or_else(|| err("missing coefficient"))?;
        let value = ExactComplex::new(re, im.unwrap_or_default());
        if parts.entry(part).or_default().insert(v, value).is_some() {
            return Err(err("duplicate index"));
        }
    }
    Ok(parts)
}

fn dense<S: Scalar>(map: &BTreeMap<usize, ExactComplex>) -> Vec<S> {
    let len = map.keys().next_back().map_or(0, |&k| k + 1);
    let mut out = vec![S::zero(); len];
    for (&k, v) in map {
        out[k] = S::from_exact(v);
    }
    out
}

/// Parse a series file into a jet whose order is the largest listed index.
pub fn parse_series<S: Scalar>(text: &str) -> Result<PowerSeriesJet<S>> {
    let parts = parse_lines(text)?;
    if parts.contains_key("den") {
        return Err(Error::Parse("series files cannot contain `den` lines".into()));
    }
    let coeffs = parts.get("num").map(dense).unwrap_or_default();
    if coeffs.is_empty() {
        return Err(Error::Parse("no coefficients".into()));
    }
    Ok(PowerSeriesJet::new(coeffs))
}

/// Parse a target file: a polynomial, or a rational function when `den` lines appear.
pub fn parse_target<S: Scalar>(text: &str) -> Result<RationalFunction<S>> {
    let parts = parse_lines(text)?;
    let num = Polynomial::new(parts.get("num").map(dense).unwrap_or_default());
    match parts.get("den") {
        Some(den) => RationalFunction::new(num, Polynomial::new(dense(den))),
        None => Ok(RationalFunction::polynomial(num)),
    }
}

/// Space-separated coefficients in ascending order; `0` for the zero polynomial.
pub fn format_coeffs<S: Scalar>(p: &Polynomial<S>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Render a polynomial in the file format.
pub fn write_series<S: Scalar>(p: &Polynomial<S>, prefix: Option<&str>) -> String {
    let mut out = String::new();
    for (v, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let z = c.to_exact();
        let (re, im) = match &z {
            Some(e) => (e.re.to_string(), e.im.to_string()),
            None => (format!("{:e}", c.to_c64().re), format!("{:e}", c.to_c64().im)),
        };
        if let Some(pre) = prefix {
            out.push_str(pre);
            out.push(' ');
        }
        out.push_str(&format!("{v} {re} {im}\n"));
    }
    out
}
