//! Canonical text and JSON forms: terms in lexicographic index order,
//! `coeff * T1^a T2^b`, joined by ` + `.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::padic::text::{format_scalar, parse_scalar};
use crate::padic::{Field, PadicScalar};

use super::multi_index::MultiIndex;
use super::series::RadiusIndexedSeries;

fn monomial(k: &MultiIndex) -> String {
    let parts: Vec<String> =
        k.0.iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("T{}", i + 1) } else { format!("T{}^{}", i + 1, e) })
            .collect();
    parts.join(" ")
}

pub fn format_series(f: &RadiusIndexedSeries) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> =
        f.terms().map(|(k, c)| if k.is_zero() { format_scalar(c) } else { format!("{} * {}", format_scalar(c), monomial(k)) }).collect();
    terms.join(" + ")
}

fn parse_monomial(s: &str, num_vars: usize) -> Result<MultiIndex> {
    let mut k = MultiIndex::zero(num_vars);
    for factor in s.split_whitespace() {
        let rest = factor.strip_prefix('T').ok_or_else(|| Error::Parse(format!("bad monomial factor {factor:?}")))?;
        let (var, exp) = match rest.split_once('^') {
            Some((v, e)) => (v, e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?),
            None => (rest, 1),
        };
        let var: usize = var.parse().map_err(|_| Error::Parse(format!("bad variable in {factor:?}")))?;
        if var == 0 || var > num_vars {
            return Err(Error::Parse(format!("variable T{var} outside 1..={num_vars}")));
        }
        k.0[var - 1] += exp;
    }
    Ok(k)
}

pub fn parse_series(field: &Field, num_vars: usize, radius: u32, degree: u32, s: &str) -> Result<RadiusIndexedSeries> {
    let mut out = RadiusIndexedSeries::zero(field, num_vars, radius, degree)?;
    let s = s.trim();
    if s == "0" || s.is_empty() {
        return Ok(out);
    }
    for term in s.split(" + ") {
        let term = term.trim();
        let (coeff, k) = match term.split_once(" * ") {
            Some((c, m)) => (parse_scalar(field, c)?, parse_monomial(m, num_vars)?),
            None if term.starts_with('T') => (PadicScalar::one(field), parse_monomial(term, num_vars)?),
            None => (parse_scalar(field, term)?, MultiIndex::zero(num_vars)),
        };
        if k.degree() > degree {
            return Err(Error::Parse(format!("term of degree {} beyond truncation {degree}", k.degree())));
        }
        out.add_term(k, coeff);
    }
    Ok(out)
}

pub fn series_to_json(f: &RadiusIndexedSeries) -> Value {
    Value::Array(f.terms().map(|(k, c)| json!({"index": k.0, "coeff": format_scalar(c)})).collect())
}
