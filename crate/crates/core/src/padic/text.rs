//! Text and JSON forms of scalars.
//!
//! Digit form: base-p digits of the unit part, lowest power first, followed by
//! the power of p it is multiplied with: `[1,1,0]@v0` is 6 modulo 125 in Q_5.
//! Extension fields list one digit vector per internal basis coordinate:
//! `[[1,0],[0,1]]@v0`. Zero to precision N prints as `0@v>=N`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::field::Field;
use super::scalar::PadicScalar;
use crate::error::{Error, Result};

fn digits(c: &BigInt, p: u64, len: usize) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut out = Vec::with_capacity(len);
    let mut c = c.clone();
    for _ in 0..len {
        let (q, r) = c.div_mod_floor(&pb);
        out.push(r.to_u64().unwrap());
        c = q;
    }
    out
}

fn digit_list(ds: &[u64]) -> String {
    let parts: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
    format!("[{}]", parts.join(","))
}

pub fn format_scalar(x: &PadicScalar) -> String {
    if x.is_zero() {
        return format!("0@v>={}", x.precision());
    }
    let p = x.field().p();
    let len = x.relative_precision() as usize;
    let coords = x.unit_coords();
    let body = if coords.len() == 1 {
        digit_list(&digits(&coords[0], p, len))
    } else {
        let parts: Vec<String> = coords.iter().map(|c| digit_list(&digits(c, p, len))).collect();
        format!("[{}]", parts.join(","))
    };
    format!("{body}@v{}", x.p_shift())
}

fn parse_digit_list(s: &str, p: u64) -> Result<Vec<u64>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected a digit list, got {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|d| {
            let v: u64 = d.trim().parse().map_err(|_| Error::Parse(format!("bad digit {d:?}")))?;
            if v >= p {
                return Err(Error::Parse(format!("digit {v} is not below p = {p}")));
            }
            Ok(v)
        })
        .collect()
}

fn from_digits(ds: &[u64], p: u64) -> BigInt {
    let pb = BigInt::from(p);
    ds.iter().rev().fold(BigInt::zero(), |acc, &d| acc * &pb + BigInt::from(d))
}

fn split_top_level(inner: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, ch) in inner.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&inner[start..]);
    out
}

/// Parse a scalar given in digit form, as a rational (`-3/4`), or as a
/// bracketed list of rational coordinates in the internal basis.
pub fn parse_scalar(field: &Field, s: &str) -> Result<PadicScalar> {
    let s = s.trim();
    if let Some((body, val)) = s.split_once('@') {
        let val = val.trim().strip_prefix('v').ok_or_else(|| Error::Parse(format!("expected @v after digits in {s:?}")))?;
        if body.trim() == "0" {
            let n: i64 = val
                .strip_prefix(">=")
                .and_then(|t| t.trim().parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad zero marker in {s:?}")))?;
            return Ok(PadicScalar::zero_with_prec(field, n));
        }
        let shift: i64 = val.trim().parse().map_err(|_| Error::Parse(format!("bad valuation in {s:?}")))?;
        let p = field.p();
        let coords: Vec<Vec<u64>> = if field.degree() == 1 {
            vec![parse_digit_list(body, p)?]
        } else {
            let inner = body
                .trim()
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("expected nested digit lists in {s:?}")))?;
            split_top_level(inner).into_iter().map(|t| parse_digit_list(t, p)).collect::<Result<_>>()?
        };
        if coords.len() != field.degree() {
            return Err(Error::Parse(format!("expected {} coordinates, got {}", field.degree(), coords.len())));
        }
        let len = coords.iter().map(|c| c.len()).max().unwrap_or(0);
        if coords.iter().any(|c| c.len() != len) {
            return Err(Error::Parse(format!("digit lists of unequal length in {s:?}")));
        }
        let v = coords.iter().map(|c| from_digits(c, p)).collect();
        return PadicScalar::from_integral_coords(field, v, shift, shift + len as i64);
    }
    if let Some(inner) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
        let qs = inner.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
        return PadicScalar::from_coords(field, &qs);
    }
    Ok(PadicScalar::from_rational(field, &parse_rational(s)?))
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t: String = s.trim().replace('\u{2212}', "-").chars().filter(|c| !c.is_whitespace()).collect();
    BigRational::from_str(&t).map_err(|_| Error::Parse(format!("bad rational {s:?}")))
}

/// Scalar from JSON: an integer, a string accepted by [`parse_scalar`], or
/// an array of rational coordinates.
pub fn scalar_from_json(field: &Field, v: &serde_json::Value) -> Result<PadicScalar> {
    match v {
        serde_json::Value::Number(n) => {
            let i = n.as_i64().ok_or_else(|| Error::Parse(format!("expected an integer, got {n}")))?;
            Ok(PadicScalar::from_int(field, i))
        }
        serde_json::Value::String(s) => parse_scalar(field, s),
        serde_json::Value::Array(items) => {
            let qs = items
                .iter()
                .map(|it| match it {
                    serde_json::Value::Number(n) => n
                        .as_i64()
                        .map(|i| BigRational::from_integer(i.into()))
                        .ok_or_else(|| Error::Parse(format!("expected an integer, got {n}"))),
                    serde_json::Value::String(s) => parse_rational(s),
                    other => Err(Error::Parse(format!("bad coordinate {other}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            PadicScalar::from_coords(field, &qs)
        }
        other => Err(Error::Parse(format!("bad scalar {other}"))),
    }
}
