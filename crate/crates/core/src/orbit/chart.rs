use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::padic::text::{format_scalar, parse_rational};
use crate::padic::{plog, Field, GaloisElement, PadicScalar, Val};
use crate::series::{factorial, MultiIndex, RadiusIndexedSeries};

/// One term `c * l^a * chi^j` of a chart function, where `l = log chi` is
/// the chart coordinate of a group element with character value `chi`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartTerm {
    pub coeff: PadicScalar,
    pub l_pow: u32,
    pub chi_pow: i64,
}

/// A finite sum of chart terms: an analytic function of the group element,
/// exactly evaluable and expandable as a power series in `l`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartFunction {
    pub terms: Vec<ChartTerm>,
}

impl ChartFunction {
    pub fn constant(c: PadicScalar) -> Self {
        ChartFunction { terms: vec![ChartTerm { coeff: c, l_pow: 0, chi_pow: 0 }] }
    }

    pub fn zero() -> Self {
        ChartFunction { terms: Vec::new() }
    }

    /// Parse sums such as `chi^2`, `chi - 1`, `1 + l`, `-3/2 * l^2 * chi^-1`.
    pub fn parse(field: &Field, s: &str) -> Result<Self> {
        let s = s.replace('\u{2212}', "-");
        let mut terms = Vec::new();
        let mut cur = String::new();
        let mut sign = 1i64;
        let flush = |cur: &mut String, sign: i64, terms: &mut Vec<ChartTerm>| -> Result<()> {
            let t = cur.trim();
            if t.is_empty() {
                return Ok(());
            }
            let mut term = parse_term(field, t)?;
            if sign < 0 {
                term.coeff = -term.coeff;
            }
            terms.push(term);
            cur.clear();
            Ok(())
        };
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let ch = chars[i];
            let prev = cur.trim_end().chars().last();
            let after_op = matches!(prev, None | Some('*') | Some('^') | Some('/'));
            if (ch == '+' || ch == '-') && !after_op {
                flush(&mut cur, sign, &mut terms)?;
                sign = if ch == '-' { -1 } else { 1 };
            } else if ch == '-' && prev.is_none() {
                sign = -sign;
            } else {
                cur.push(ch);
            }
            i += 1;
        }
        flush(&mut cur, sign, &mut terms)?;
        if terms.is_empty() {
            return Err(Error::Parse(format!("empty chart function {s:?}")));
        }
        Ok(ChartFunction { terms })
    }

    /// Value at the group element with character `chi` (an element of the
    /// base field) and chart coordinate `l = log chi`.
    pub fn evaluate(&self, field: &Field, chi: &PadicScalar, l: &PadicScalar) -> Result<PadicScalar> {
        let chi = chi.embed(field)?;
        let l = l.embed(field)?;
        let mut acc = PadicScalar::zero(field);
        for t in &self.terms {
            let v = &(&t.coeff * &l.powu(t.l_pow as u64)) * &chi.pow(t.chi_pow)?;
            acc = &acc + &v;
        }
        Ok(acc)
    }

    /// Coefficients of the expansion in `l` up to `degree`, using
    /// chi^j = exp(j l) = sum_i j^i l^i / i!.
    pub fn expand(&self, field: &Field, degree: u32) -> Vec<PadicScalar> {
        let mut out = vec![PadicScalar::zero(field); degree as usize + 1];
        for t in self.terms.iter().filter(|t| t.l_pow <= degree) {
            for i in 0..=degree - t.l_pow {
                let idx = (t.l_pow + i) as usize;
                let q = if t.chi_pow == 0 {
                    if i == 0 {
                        BigRational::one()
                    } else {
                        continue;
                    }
                } else {
                    BigRational::new(num_traits::pow(BigInt::from(t.chi_pow), i as usize), factorial(i))
                };
                let c = &t.coeff * &PadicScalar::from_rational(field, &q);
                out[idx] = &out[idx] + &c;
            }
        }
        out
    }
}

fn parse_term(field: &Field, t: &str) -> Result<ChartTerm> {
    let mut coeff = PadicScalar::one(field);
    let mut l_pow = 0u32;
    let mut chi_pow = 0i64;
    for factor in t.split('*') {
        let f = factor.trim();
        if f.is_empty() {
            return Err(Error::Parse(format!("empty factor in {t:?}")));
        }
        let (base, exp) = match f.split_once('^') {
            Some((b, e)) => (b.trim(), Some(e.trim())),
            None => (f, None),
        };
        let parse_exp = |e: Option<&str>| -> Result<i64> {
            match e {
                None => Ok(1),
                Some(e) => e.parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent in {f:?}"))),
            }
        };
        match base {
            "l" => {
                let e = parse_exp(exp)?;
                if e < 0 {
                    return Err(Error::Parse(format!("negative power of l in {f:?}")));
                }
                l_pow += e as u32;
            }
            "chi" => chi_pow += parse_exp(exp)?,
            _ => {
                if exp.is_some() {
                    return Err(Error::Parse(format!("unsupported power in {f:?}")));
                }
                coeff = &coeff * &PadicScalar::from_rational(field, &parse_rational(base)?);
            }
        }
    }
    Ok(ChartTerm { coeff, l_pow, chi_pow })
}

impl fmt::Display for ChartFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let mut s = match t.coeff.rational_reconstruct() {
                    Some(q) => q.to_string(),
                    None => format_scalar(&t.coeff),
                };
                if t.l_pow > 0 {
                    s.push_str(&format!(" * l^{}", t.l_pow));
                }
                if t.chi_pow != 0 {
                    s.push_str(&format!(" * chi^{}", t.chi_pow));
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Debug)]
pub enum ActionKind {
    /// Entry (i, j) of Mat(g) is a chart function.
    Chart(Vec<Vec<ChartFunction>>),
    /// Mat(g) = exp(l(g) * theta0).
    Exponential(Matrix),
}

/// A matrix-valued analytic function g -> Mat(g) on the subgroup
/// 1 + p^n Z_p of the cyclotomic character, acting on row vectors:
/// g(w) = g(w) * Mat(g), which makes Mat(gh) = g(Mat(h)) Mat(g).
#[derive(Clone, Debug)]
pub struct AnalyticMatrixAction {
    field: Field,
    dim: usize,
    radius: u32,
    kind: ActionKind,
    /// Whether group elements also act on coefficients through the Galois action.
    coefficient_action: bool,
}

impl AnalyticMatrixAction {
    pub fn from_chart(field: &Field, radius: u32, entries: Vec<Vec<ChartFunction>>) -> Result<Self> {
        let dim = entries.len();
        if dim == 0 || entries.iter().any(|r| r.len() != dim) {
            return Err(Error::ShapeMismatch("action matrix must be square and nonempty".into()));
        }
        let a = AnalyticMatrixAction { field: field.clone(), dim, radius, kind: ActionKind::Chart(entries), coefficient_action: false };
        a.check_identity_at_origin()?;
        Ok(a)
    }

    pub fn exponential(radius: u32, theta0: Matrix) -> Result<Self> {
        if !theta0.is_square() || theta0.rows() == 0 {
            return Err(Error::ShapeMismatch("generator must be square and nonempty".into()));
        }
        let field = theta0.field().unwrap().clone();
        Ok(AnalyticMatrixAction { field, dim: theta0.rows(), radius, kind: ActionKind::Exponential(theta0), coefficient_action: false })
    }

    /// Let group elements act on coefficients too (cyclotomic coefficient fields).
    pub fn with_coefficient_action(mut self, on: bool) -> Self {
        self.coefficient_action = on;
        self
    }

    /// The same action restricted to the smaller subgroup 1 + p^radius Z_p.
    pub fn with_radius(&self, radius: u32) -> Self {
        let mut a = self.clone();
        a.radius = radius;
        a
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn kind(&self) -> &ActionKind {
        &self.kind
    }

    pub fn has_coefficient_action(&self) -> bool {
        self.coefficient_action
    }

    /// The trivial action on K^dim.
    pub fn trivial(field: &Field, radius: u32, dim: usize) -> Self {
        AnalyticMatrixAction::exponential(radius, Matrix::zeros(field, dim, dim)).expect("square")
    }

    /// g -> chi(g)^s * Id.
    pub fn character(field: &Field, radius: u32, dim: usize, s: i64) -> Self {
        let entries = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        if i == j {
                            ChartFunction { terms: vec![ChartTerm { coeff: PadicScalar::one(field), l_pow: 0, chi_pow: s }] }
                        } else {
                            ChartFunction::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        AnalyticMatrixAction::from_chart(field, radius, entries).expect("valid")
    }

    /// g -> ((1, l(g)), (0, 1)), the additive orbit model.
    pub fn additive(field: &Field, radius: u32) -> Self {
        let one = ChartFunction::constant(PadicScalar::one(field));
        let l = ChartFunction { terms: vec![ChartTerm { coeff: PadicScalar::one(field), l_pow: 1, chi_pow: 0 }] };
        AnalyticMatrixAction::from_chart(field, radius, vec![vec![one.clone(), l], vec![ChartFunction::zero(), one]]).expect("valid")
    }

    /// g -> ((chi, chi - 1), (0, 1)).
    pub fn unipotent(field: &Field, radius: u32) -> Self {
        let chi = ChartFunction { terms: vec![ChartTerm { coeff: PadicScalar::one(field), l_pow: 0, chi_pow: 1 }] };
        let chi_minus_one = ChartFunction {
            terms: vec![
                ChartTerm { coeff: PadicScalar::one(field), l_pow: 0, chi_pow: 1 },
                ChartTerm { coeff: -PadicScalar::one(field), l_pow: 0, chi_pow: 0 },
            ],
        };
        AnalyticMatrixAction::from_chart(
            field,
            radius,
            vec![vec![chi, chi_minus_one], vec![ChartFunction::zero(), ChartFunction::constant(PadicScalar::one(field))]],
        )
        .expect("valid")
    }

    fn check_identity_at_origin(&self) -> Result<()> {
        let m0 = self.expansion(0)?;
        if !m0[0].agrees_to(&Matrix::identity(&self.field, self.dim), self.field.precision()) {
            return Err(Error::ShapeMismatch("Mat at the chart origin is not the identity".into()));
        }
        Ok(())
    }

    /// Validates chi in 1 + p^n Z_p and returns l = log chi.
    pub fn chart_coordinate(&self, chi: &PadicScalar) -> Result<PadicScalar> {
        principal_log(chi, self.radius)
    }

    /// Mat(g) for the group element with character value `chi` in 1 + p^n Z_p.
    pub fn mat(&self, chi: &PadicScalar) -> Result<Matrix> {
        let l = self.chart_coordinate(chi)?;
        match &self.kind {
            ActionKind::Chart(entries) => {
                let rows = entries
                    .iter()
                    .map(|row| row.iter().map(|f| f.evaluate(&self.field, chi, &l)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                Matrix::from_rows(rows)
            }
            ActionKind::Exponential(theta0) => theta0.scale(&l.embed(&self.field)?).exp(),
        }
    }

    /// Galois element acting on coefficients for `chi`, when enabled.
    pub fn coefficient_galois(&self, chi: &PadicScalar) -> Result<Option<GaloisElement>> {
        if !self.coefficient_action || self.field.is_base() {
            return Ok(None);
        }
        Ok(Some(GaloisElement::from_character(&self.field, chi)?))
    }

    /// Matrices M_0, ..., M_degree with Mat(g) = sum_k l(g)^k M_k.
    pub fn expansion(&self, degree: u32) -> Result<Vec<Matrix>> {
        match &self.kind {
            ActionKind::Chart(entries) => {
                let expanded: Vec<Vec<Vec<PadicScalar>>> =
                    entries.iter().map(|row| row.iter().map(|f| f.expand(&self.field, degree)).collect()).collect();
                (0..=degree as usize)
                    .map(|k| Matrix::from_rows(expanded.iter().map(|row| row.iter().map(|c| c[k].clone()).collect()).collect()))
                    .collect()
            }
            ActionKind::Exponential(theta0) => {
                let mut out = vec![Matrix::identity(&self.field, self.dim)];
                for k in 1..=degree as i64 {
                    let inv_k = PadicScalar::from_ratio(&self.field, 1, k);
                    let next = out.last().unwrap().mul(theta0)?.scale(&inv_k);
                    out.push(next);
                }
                Ok(out)
            }
        }
    }

    /// Mat as a matrix of one-variable series in T = l.
    pub fn series_entries(&self, degree: u32) -> Result<Vec<Vec<RadiusIndexedSeries>>> {
        let ms = self.expansion(degree)?;
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| {
                        RadiusIndexedSeries::from_terms(
                            &self.field,
                            1,
                            self.radius,
                            degree,
                            ms.iter().enumerate().map(|(k, m)| (MultiIndex(vec![k as u32]), m[(i, j)].clone())),
                        )
                    })
                    .collect()
            })
            .collect()
    }

    /// Mat(gh) = g(Mat(h)) Mat(g) to valuation `bound`.
    pub fn check_cocycle(&self, chi_g: &PadicScalar, chi_h: &PadicScalar, bound: i64) -> Result<bool> {
        let gh = chi_g * chi_h;
        let lhs = self.mat(&gh)?;
        let mut mh = self.mat(chi_h)?;
        if let Some(g) = self.coefficient_galois(chi_g)? {
            mh = mh.try_map(|x| g.act(x))?;
        }
        let rhs = mh.mul(&self.mat(chi_g)?)?;
        Ok(lhs.agrees_to(&rhs, bound))
    }
}

/// Character values 1 + p^n u for sampling, with u a unit so that they
/// generate 1 + p^n Z_p.
pub fn generator_character(field: &Field, n: u32, u: i64) -> PadicScalar {
    let base = field.base_field();
    let p = BigInt::from(field.p());
    let x = BigInt::one() + num_traits::pow(p, n as usize) * BigInt::from(u);
    PadicScalar::from_bigint(&base, &x, base.precision())
}

/// log chi for chi in 1 + p^n Z_p, else RadiusViolation.
pub fn principal_log(chi: &PadicScalar, n: u32) -> Result<PadicScalar> {
    let bound = Val::from_integer(n as i64);
    let d = chi - &PadicScalar::one(chi.field());
    if !d.valuation().is_at_least(bound) {
        return Err(Error::RadiusViolation { got: format!("v(chi - 1) = {}", d.valuation()), radius: n });
    }
    let l = plog(chi)?;
    if !l.valuation().is_at_least(bound) {
        return Err(Error::RadiusViolation { got: l.valuation().to_string(), radius: n });
    }
    Ok(l)
}

/// Whether `chi` topologically generates 1 + p^n Z_p, i.e. v(chi - 1) = n.
pub fn is_generator(chi: &PadicScalar, n: u32) -> bool {
    let d = chi - &PadicScalar::one(chi.field());
    !d.is_zero() && d.valuation().finite() == Some(Val::from_integer(n as i64))
}
