//! Lubin-Tate formal groups over Q_p and its unramified extensions: group
//! law, endomorphisms [a], logarithm, torsion slopes and the embedding chart.

mod embed;
mod group;
mod model;
mod torsion;

pub use embed::{coordinate_orbit, embedding_chart, EmbeddingSet};
pub use group::{lt_build, lt_endo, LTEndomorphism, LTFormalGroup, LiftKind, MAX_DEGREE};
pub use model::LTModelSpec;
pub use torsion::{lt_torsion_slopes, newton_slopes, Slope, TORSION_DEGREE_CAP};

use crate::error::{Error, Result};
use crate::padic::{PadicScalar, Val};
use crate::series::{MultiIndex, RadiusIndexedSeries};

/// Evaluates a series with coefficients in F at a point of an extension of F
/// (or of F itself), without radius checks.
pub(crate) fn evaluate_in(f: &RadiusIndexedSeries, point: &[PadicScalar]) -> Result<PadicScalar> {
    let target = point.first().map(|x| x.field().clone()).unwrap_or_else(|| f.field().clone());
    let d = f.degree() as usize;
    let pows: Vec<Vec<PadicScalar>> = point
        .iter()
        .map(|x| {
            let mut v = vec![PadicScalar::one(&target)];
            for i in 1..=d {
                let next = &v[i - 1] * x;
                v.push(next);
            }
            v
        })
        .collect();
    let mut acc = PadicScalar::zero(&target);
    for (k, a) in f.terms() {
        let mut t = a.embed(&target)?;
        for (i, &e) in k.0.iter().enumerate() {
            if e > 0 {
                t = &t * &pows[i][e as usize];
            }
        }
        acc = acc.try_add(&t)?;
    }
    Ok(acc)
}

/// log_F, the primitive of 1 / dF/dY(T, 0) with log_F(T) = T + O(T^2).
pub fn lt_log(g: &LTFormalGroup) -> Result<RadiusIndexedSeries> {
    let field = g.field();
    let d = g.degree();
    let p = field.p() as f64;
    if p.powf(field.precision() as f64) <= d as f64 {
        return Err(Error::PrecisionTooLow { precision: field.precision(), degree: d });
    }
    let work = g.work_field();
    let dy = g.law_work().derive(2)?;
    let terms: Vec<_> = dy.terms().filter(|(k, _)| k.0[1] == 0).map(|(k, c)| (MultiIndex(vec![k.0[0]]), c.clone())).collect();
    let w = RadiusIndexedSeries::from_terms(work, 1, 1, d - 1, terms)?.invert()?;
    let n = field.precision();
    let terms: Vec<_> = w
        .terms()
        .map(|(k, c)| {
            let e = k.0[0] as i64 + 1;
            (MultiIndex(vec![e as u32]), (c * &PadicScalar::from_ratio(work, 1, e)).truncate(n))
        })
        .collect();
    RadiusIndexedSeries::from_terms(field, 1, 1, d, terms)
}

/// The action of the unit `a` of O_F on a point `t` of positive valuation:
/// [a](t), with [a] expanded far enough that the omitted tail lies below
/// the working precision when the degree cap allows.
pub fn lt_char_act(g: &LTFormalGroup, a: &PadicScalar, t: &PadicScalar) -> Result<PadicScalar> {
    let a = a.embed(g.field())?;
    if !a.is_unit() {
        return Err(Error::NotAUnit);
    }
    let zero = Val::from_integer(0);
    let vt = match t.valuation().finite() {
        None => return Ok(t.clone()),
        Some(v) if v <= zero => return Err(Error::PointOutsideRadius { got: v.to_string(), radius: 0 }),
        Some(v) => v,
    };
    let n = t.precision().max(g.field().precision());
    let wanted = (Val::from_integer(n + 1) / vt).ceil().to_integer().max(g.degree() as i64);
    let cap = (g.field().p() as i64 * g.field().precision() - 1).min(MAX_DEGREE as i64);
    let degree = wanted.min(cap) as u32;
    let work = group::guard_field(g.field(), degree)?;
    let series = group::endo_series(g, &a, &work, degree)?;
    evaluate_in(&series, std::slice::from_ref(t))
}
