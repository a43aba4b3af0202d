use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic::{PadicScalar, Val, Valuation};

use super::group::LTFormalGroup;

/// Largest torsion polynomial degree q^n handled.
pub const TORSION_DEGREE_CAP: u64 = 4096;

/// A Newton-polygon segment: roots of valuation `slope`, counted with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Slope {
    #[serde(serialize_with = "ser_val")]
    pub slope: Val,
    pub multiplicity: u64,
}

fn ser_val<S: serde::Serializer>(v: &Val, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

type Poly = Vec<PadicScalar>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let zero = PadicScalar::zero(a[0].field());
    let mut out = vec![zero; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

/// f(a) for a polynomial f, by Horner.
fn poly_compose(f: &Poly, a: &Poly) -> Poly {
    let mut acc: Poly = vec![f.last().unwrap().clone()];
    for c in f.iter().rev().skip(1) {
        acc = poly_mul(&acc, a);
        acc[0] = &acc[0] + c;
    }
    acc
}

/// Valuations of the nonzero roots from the lower convex hull of
/// (i, v(c_i)); coefficients that vanish to precision are ignored.
pub fn newton_slopes(coeffs: &[PadicScalar]) -> Vec<Slope> {
    let pts: Vec<(i64, Val)> = coeffs
        .iter()
        .enumerate()
        .filter_map(|(i, c)| match c.valuation() {
            Valuation::Finite(v) => Some((i as i64, v)),
            Valuation::AtLeast(_) => None,
        })
        .collect();
    let mut out = Vec::new();
    if pts.len() < 2 {
        return out;
    }
    let mut cur = 0usize;
    while cur + 1 < pts.len() {
        let (x0, y0) = pts[cur];
        let mut best = cur + 1;
        let mut best_slope = (pts[best].1 - y0) / Val::from_integer(pts[best].0 - x0);
        for (j, &(x, y)) in pts.iter().enumerate().skip(cur + 2) {
            let s = (y - y0) / Val::from_integer(x - x0);
            if s <= best_slope {
                best = j;
                best_slope = s;
            }
        }
        out.push(Slope { slope: -best_slope, multiplicity: (pts[best].0 - x0) as u64 });
        cur = best;
    }
    out
}

fn as_multiset(slopes: &[Slope]) -> BTreeMap<Val, u64> {
    let mut m = BTreeMap::new();
    for s in slopes {
        *m.entry(s.slope).or_insert(0) += s.multiplicity;
    }
    m
}

/// Newton slopes of [pi^n](T) / [pi^{n-1}](T): the valuations of the
/// primitive pi^n-torsion points. Computed from the exact polynomial
/// iterates of the lift, independently of the series truncation.
pub fn lt_torsion_slopes(g: &LTFormalGroup, n: u32) -> Result<Vec<Slope>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let needed = g.q().checked_pow(n).unwrap_or(u64::MAX);
    if needed > TORSION_DEGREE_CAP {
        return Err(Error::DegreeTooSmallForLevel { level: n, needed, cap: TORSION_DEGREE_CAP });
    }
    let prec = g.field().precision().max(n as i64 + 3) + 2;
    let work = g.field().with_precision(prec)?;
    let lift = g.lift_to(&work, g.q().max(g.degree() as u64).min(TORSION_DEGREE_CAP) as u32)?;
    let top = lift.terms().map(|(k, _)| k.0[0]).max().unwrap_or(1) as usize;
    let f: Poly = (0..=top).map(|i| lift.coeff1(i as u32).truncate(prec)).collect();
    let mut prev: Poly = vec![PadicScalar::zero(&work), PadicScalar::one(&work)];
    let mut next = prev.clone();
    for _ in 0..n {
        prev = next;
        next = poly_compose(&f, &prev);
    }
    let strip = |p: &Poly| -> Vec<PadicScalar> { p.iter().skip_while(|c| c.is_zero()).cloned().collect() };
    let mut all = as_multiset(&newton_slopes(&strip(&next)));
    for (v, m) in as_multiset(&newton_slopes(&strip(&prev))) {
        let e = all.entry(v).or_insert(0);
        *e = e.saturating_sub(m);
    }
    Ok(all.into_iter().filter(|(_, m)| *m > 0).map(|(slope, multiplicity)| Slope { slope, multiplicity }).collect())
}
