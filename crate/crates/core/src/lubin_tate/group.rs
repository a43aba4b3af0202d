use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::{Field, PadicScalar, Val};
use crate::series::{binomial, MultiIndex, RadiusIndexedSeries};

/// Largest truncation degree accepted by the solvers.
pub const MAX_DEGREE: u32 = 256;

/// The Frobenius lift f(T) defining the formal group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LiftKind {
    /// pi T + T^q.
    Standard,
    /// (1 + T)^p - 1, for F = Q_p and pi = p.
    Multiplicative,
}

/// Lubin-Tate formal group of a uniformizer of F, with group law and lift
/// known to degree D. Coefficients are kept with guard digits.
#[derive(Clone, Debug)]
pub struct LTFormalGroup {
    field: Field,
    work: Field,
    pi: PadicScalar,
    q: u64,
    lift: LiftKind,
    custom_lift: Option<RadiusIndexedSeries>,
    f: RadiusIndexedSeries,
    law: RadiusIndexedSeries,
    degree: u32,
}

/// [a](T) to degree D.
#[derive(Clone, Debug)]
pub struct LTEndomorphism {
    pub a: PadicScalar,
    pub series: RadiusIndexedSeries,
}

pub(crate) fn guard_field(field: &Field, degree: u32) -> Result<Field> {
    field.with_precision(field.precision() + degree as i64 + 4)
}

/// The homogeneous part of degree m.
fn homogeneous(f: &RadiusIndexedSeries, m: u32) -> Vec<(MultiIndex, PadicScalar)> {
    f.terms().filter(|(k, _)| k.degree() == m).map(|(k, c)| (k.clone(), c.clone())).collect()
}

/// f(g) for a univariate f, using only the powers of g that f needs.
pub(crate) fn apply_univariate(f: &RadiusIndexedSeries, g: &RadiusIndexedSeries) -> Result<RadiusIndexedSeries> {
    let degree = g.degree().min(f.degree());
    let g = g.truncate(degree);
    let mut out = g.empty_like();
    let max_e = f.terms().map(|(k, _)| k.0[0]).filter(|&e| e <= degree).max().unwrap_or(0);
    let mut pow = RadiusIndexedSeries::one(g.field(), g.num_vars(), g.radius(), degree)?;
    for e in 0..=max_e {
        if e > 0 {
            pow = pow.mul(&g)?;
        }
        let c = f.coeff1(e);
        if !c.is_zero() {
            out = out.add(&pow.scale(&c))?;
        }
    }
    Ok(out)
}

fn check_supported(field: &Field) -> Result<()> {
    if field.ramification_index() != 1 || field.cyclotomic_level().is_some() {
        return Err(Error::UnsupportedField);
    }
    Ok(())
}

fn standard_lift(work: &Field, pi: &PadicScalar, q: u64, degree: u32) -> Result<RadiusIndexedSeries> {
    let mut terms = vec![(MultiIndex(vec![1]), pi.clone())];
    if q <= degree as u64 {
        terms.push((MultiIndex(vec![q as u32]), PadicScalar::one(work)));
    }
    RadiusIndexedSeries::from_terms(work, 1, 1, degree, terms)
}

fn multiplicative_lift(work: &Field, p: u64, degree: u32) -> Result<RadiusIndexedSeries> {
    let terms = (1..=p.min(degree as u64) as u32)
        .map(|k| (MultiIndex(vec![k]), PadicScalar::from_bigint(work, &binomial(p as u32, k), work.precision())));
    RadiusIndexedSeries::from_terms(work, 1, 1, degree, terms)
}

/// f = pi T mod degree 2 and f = T^q mod pi (coefficients visible to degree D).
fn check_lift(f: &RadiusIndexedSeries, pi: &PadicScalar, q: u64) -> Result<()> {
    if !f.constant_term().is_zero() {
        return Err(Error::NotAFrobeniusLift("nonzero constant term".into()));
    }
    if f.coeff1(1) != *pi {
        return Err(Error::NotAFrobeniusLift("linear coefficient differs from pi".into()));
    }
    let one = PadicScalar::one(f.field());
    for (k, c) in f.terms() {
        let e = k.0[0] as u64;
        let c = if e == q { c - &one } else { c.clone() };
        if e != 1 && !c.valuation().is_at_least(Val::from_integer(1)) {
            return Err(Error::NotAFrobeniusLift(format!("coefficient of T^{e} is not congruent to the T^q pattern mod pi")));
        }
    }
    Ok(())
}

/// Solve for the terms of degree 2..=D of a series s with s = linear mod
/// degree 2 and f(s) = s(f, ..., f): at each degree m,
/// s_m = ([s(f..)]_m - [f(s)]_m) / (pi - pi^m).
fn solve_graded(
    f: &RadiusIndexedSeries,
    pi: &PadicScalar,
    linear: RadiusIndexedSeries,
    inner: &[RadiusIndexedSeries],
    degree: u32,
) -> Result<RadiusIndexedSeries> {
    let mut s = linear;
    for m in 2..=degree {
        let trunc: Vec<RadiusIndexedSeries> = inner.iter().map(|g| g.truncate(m)).collect();
        let lhs = s.truncate(m).compose(&trunc)?;
        let rhs = apply_univariate(&f.truncate(m), &s.truncate(m))?;
        let denom = pi - &pi.powu(m as u64);
        let diff = lhs.sub(&rhs)?;
        for (k, c) in homogeneous(&diff, m) {
            s.add_term(k, c.try_div(&denom)?);
        }
    }
    Ok(s)
}

impl LTFormalGroup {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn uniformizer(&self) -> &PadicScalar {
        &self.pi
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn lift_kind(&self) -> &LiftKind {
        &self.lift
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    fn present(&self, s: &RadiusIndexedSeries) -> RadiusIndexedSeries {
        let n = self.field.precision();
        let terms: Vec<_> = s.terms().map(|(k, c)| (k.clone(), c.truncate(n))).collect();
        RadiusIndexedSeries::from_terms(&self.field, s.num_vars(), s.radius(), s.degree(), terms).expect("same shape")
    }

    /// f(T) at the user precision.
    pub fn lift(&self) -> RadiusIndexedSeries {
        self.present(&self.f)
    }

    /// F(X, Y) at the user precision.
    pub fn law(&self) -> RadiusIndexedSeries {
        self.present(&self.law)
    }

    pub(crate) fn law_work(&self) -> &RadiusIndexedSeries {
        &self.law
    }

    pub(crate) fn work_field(&self) -> &Field {
        &self.work
    }

    /// The lift to an arbitrary degree (custom lifts stop at D).
    pub(crate) fn lift_to(&self, work: &Field, degree: u32) -> Result<RadiusIndexedSeries> {
        let pi = self.pi.lift_precision(work.precision()).embed(work)?;
        match (&self.custom_lift, &self.lift) {
            (Some(c), _) => {
                let terms: Vec<_> = c.terms().map(|(k, v)| (k.clone(), v.clone())).collect();
                RadiusIndexedSeries::from_terms(work, 1, 1, degree.min(c.degree()), terms)
            }
            (None, LiftKind::Standard) => standard_lift(work, &pi, self.q, degree),
            (None, LiftKind::Multiplicative) => multiplicative_lift(work, self.field.p(), degree),
        }
    }

    /// Evaluates F(x, y) with the stored truncation.
    pub fn add_points(&self, x: &PadicScalar, y: &PadicScalar) -> Result<PadicScalar> {
        super::evaluate_in(&self.law, &[x.clone(), y.clone()])
    }
}

/// Build the formal group of `pi` over F to degree D. `custom_lift`, when
/// given, replaces the lift named by `lift`.
pub fn lt_build(
    field: &Field,
    pi: &PadicScalar,
    lift: LiftKind,
    custom_lift: Option<RadiusIndexedSeries>,
    degree: u32,
) -> Result<LTFormalGroup> {
    check_supported(field)?;
    if degree == 0 || degree > MAX_DEGREE || degree as i64 >= field.p() as i64 * field.precision() {
        return Err(Error::DegreeOverflow(degree));
    }
    let pi = pi.embed(field)?;
    if pi.valuation().finite() != Some(Val::from_integer(1)) {
        return Err(Error::NotAFrobeniusLift("pi is not a uniformizer".into()));
    }
    let q = field.residue_cardinality();
    let work = guard_field(field, degree)?;
    let pi_w = pi.lift_precision(work.precision()).embed(&work)?;
    let f = match &custom_lift {
        Some(c) => {
            if c.num_vars() != 1 {
                return Err(Error::ShapeMismatch("the lift is a one-variable series".into()));
            }
            if c.field() != field {
                return Err(Error::MixedFields);
            }
            let terms: Vec<_> = c.terms().map(|(k, v)| (k.clone(), v.lift_precision(work.precision()))).collect();
            RadiusIndexedSeries::from_terms(&work, 1, 1, degree.min(c.degree()), terms)?.with_degree(degree)?
        }
        None => match lift {
            LiftKind::Standard => standard_lift(&work, &pi_w, q, degree)?,
            LiftKind::Multiplicative => {
                if !field.is_base() || pi != PadicScalar::from_int(field, field.p() as i64) {
                    return Err(Error::NotAFrobeniusLift("the multiplicative lift needs F = Q_p and pi = p".into()));
                }
                multiplicative_lift(&work, field.p(), degree)?
            }
        },
    };
    check_lift(&f, &pi_w, q)?;
    let x = RadiusIndexedSeries::variable(&work, 2, 1, degree, 0)?;
    let y = RadiusIndexedSeries::variable(&work, 2, 1, degree, 1)?;
    let fx = apply_univariate(&f, &x)?;
    let fy = apply_univariate(&f, &y)?;
    let law = solve_graded(&f, &pi_w, x.add(&y)?, &[fx, fy], degree)?;
    let custom_lift = custom_lift.map(|_| f.clone());
    Ok(LTFormalGroup { field: field.clone(), work, pi, q, lift, custom_lift, f, law, degree })
}

/// [a](T) to the group's degree.
pub fn lt_endo(g: &LTFormalGroup, a: &PadicScalar) -> Result<LTEndomorphism> {
    let series = endo_series(g, a, &g.work, g.degree)?;
    Ok(LTEndomorphism { a: a.embed(&g.field)?, series: g.present(&series) })
}

/// [a](T) at a chosen working field and degree.
pub(crate) fn endo_series(g: &LTFormalGroup, a: &PadicScalar, work: &Field, degree: u32) -> Result<RadiusIndexedSeries> {
    let a = a.embed(&g.field)?;
    if !a.is_integral() {
        return Err(Error::NotIntegral);
    }
    let a_w = a.lift_precision(work.precision()).embed(work)?;
    let f = g.lift_to(work, degree)?;
    let degree = f.degree();
    let pi_w = g.pi.lift_precision(work.precision()).embed(work)?;
    let linear = RadiusIndexedSeries::from_terms(work, 1, 1, degree, [(MultiIndex(vec![1]), a_w)])?;
    solve_graded(&f, &pi_w, linear, std::slice::from_ref(&f), degree)
}

impl LTEndomorphism {
    pub fn evaluate(&self, t: &PadicScalar) -> Result<PadicScalar> {
        super::evaluate_in(&self.series, std::slice::from_ref(t))
    }
}
