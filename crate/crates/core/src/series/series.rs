use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::padic::{Field, PadicScalar, Val, Valuation};

use super::multi_index::MultiIndex;
use super::norm::GaussNorm;

/// A power series in `d` variables over a p-adic field, truncated to total
/// degree `D`, carrying the radius parameter `n` of its Gauss norm.
#[derive(Clone, Debug)]
pub struct RadiusIndexedSeries {
    field: Field,
    num_vars: usize,
    radius: u32,
    degree: u32,
    coeffs: BTreeMap<MultiIndex, PadicScalar>,
}

impl PartialEq for RadiusIndexedSeries {
    /// Same shape and coefficients equal to precision.
    fn eq(&self, other: &Self) -> bool {
        self.same_shape(other).is_ok() && self.degree == other.degree && self.sub(other).is_ok_and(|d| d.coeffs.is_empty())
    }
}

impl RadiusIndexedSeries {
    /// The zero series. Rejects `degree >= p * N` (N the field precision),
    /// where factorial denominators would consume all precision.
    pub fn zero(field: &Field, num_vars: usize, radius: u32, degree: u32) -> Result<Self> {
        if radius == 0 {
            return Err(Error::RadiusTooSmall { requested: 0, radius: 1 });
        }
        if degree as i64 >= field.p() as i64 * field.precision() {
            return Err(Error::DegreeTooLarge { degree, precision: field.precision() });
        }
        Ok(RadiusIndexedSeries { field: field.clone(), num_vars, radius, degree, coeffs: BTreeMap::new() })
    }

    pub fn from_terms(
        field: &Field,
        num_vars: usize,
        radius: u32,
        degree: u32,
        terms: impl IntoIterator<Item = (MultiIndex, PadicScalar)>,
    ) -> Result<Self> {
        let mut s = RadiusIndexedSeries::zero(field, num_vars, radius, degree)?;
        for (k, c) in terms {
            if k.dim() != num_vars {
                return Err(Error::ShapeMismatch(format!("index {k} in {num_vars} variables")));
            }
            if c.field() != field {
                return Err(Error::MixedFields);
            }
            s.add_term(k, c);
        }
        Ok(s)
    }

    /// One-variable series with the given coefficients a_0, a_1, ...
    pub fn univariate(field: &Field, radius: u32, degree: u32, coeffs: &[PadicScalar]) -> Result<Self> {
        RadiusIndexedSeries::from_terms(
            field,
            1,
            radius,
            degree,
            coeffs.iter().enumerate().map(|(i, c)| (MultiIndex(vec![i as u32]), c.clone())),
        )
    }

    pub fn constant(field: &Field, num_vars: usize, radius: u32, degree: u32, c: &PadicScalar) -> Result<Self> {
        RadiusIndexedSeries::from_terms(field, num_vars, radius, degree, [(MultiIndex::zero(num_vars), c.clone())])
    }

    pub fn one(field: &Field, num_vars: usize, radius: u32, degree: u32) -> Result<Self> {
        RadiusIndexedSeries::constant(field, num_vars, radius, degree, &PadicScalar::one(field))
    }

    /// The coordinate T_j (0-based j).
    pub fn variable(field: &Field, num_vars: usize, radius: u32, degree: u32, j: usize) -> Result<Self> {
        if j >= num_vars {
            return Err(Error::BadDirection { direction: j + 1, dim: num_vars });
        }
        RadiusIndexedSeries::from_terms(field, num_vars, radius, degree, [(MultiIndex::unit(num_vars, j), PadicScalar::one(field))])
    }

    /// A series of the same shape with no terms.
    pub fn empty_like(&self) -> Self {
        RadiusIndexedSeries {
            field: self.field.clone(),
            num_vars: self.num_vars,
            radius: self.radius,
            degree: self.degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub(crate) fn add_term(&mut self, k: MultiIndex, c: PadicScalar) {
        if k.degree() > self.degree {
            return;
        }
        match self.coeffs.remove(&k) {
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.coeffs.insert(k, s);
                }
            }
            None => {
                if !c.is_zero() {
                    self.coeffs.insert(k, c);
                }
            }
        }
    }

    pub(crate) fn raw_insert(&mut self, k: MultiIndex, c: PadicScalar) {
        if k.degree() <= self.degree && !c.is_zero() {
            self.coeffs.insert(k, c);
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Nonzero coefficients in lexicographic order of their indices.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &PadicScalar)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: &MultiIndex) -> PadicScalar {
        self.coeffs.get(k).cloned().unwrap_or_else(|| PadicScalar::zero(&self.field))
    }

    /// Coefficient of T^i for a one-variable series.
    pub fn coeff1(&self, i: u32) -> PadicScalar {
        self.coeff(&MultiIndex(vec![i]))
    }

    pub fn constant_term(&self) -> PadicScalar {
        self.coeff(&MultiIndex::zero(self.num_vars))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Every retained coefficient has valuation >= bound.
    pub fn is_zero_mod(&self, bound: i64) -> bool {
        self.coeffs.values().all(|c| c.is_zero_mod(bound))
    }

    /// The coefficientwise difference has valuation >= bound up to the
    /// smaller truncation degree.
    pub fn agrees_to(&self, other: &Self, bound: i64) -> bool {
        self.sub(other).is_ok_and(|d| d.is_zero_mod(bound))
    }

    /// Lowest valuation among retained coefficients, with its index.
    pub fn min_coeff_valuation(&self) -> Option<(MultiIndex, Val)> {
        self.coeffs.iter().map(|(k, c)| (k.clone(), c.val_lower())).min_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)))
    }

    pub fn with_radius(&self, radius: u32) -> Self {
        let mut s = self.clone();
        s.radius = radius.max(1);
        s
    }

    pub fn truncate(&self, degree: u32) -> Self {
        let mut s = self.empty_like();
        s.degree = degree.min(self.degree);
        for (k, c) in &self.coeffs {
            if k.degree() <= s.degree {
                s.coeffs.insert(k.clone(), c.clone());
            }
        }
        s
    }

    /// Same terms with a larger truncation degree; only meaningful for exact polynomials.
    pub fn with_degree(&self, degree: u32) -> Result<Self> {
        let mut s = RadiusIndexedSeries::zero(&self.field, self.num_vars, self.radius, degree)?;
        for (k, c) in &self.coeffs {
            s.raw_insert(k.clone(), c.clone());
        }
        Ok(s)
    }

    pub fn map_coeffs(&self, f: impl Fn(&PadicScalar) -> PadicScalar) -> Self {
        let mut s = self.empty_like();
        for (k, c) in &self.coeffs {
            s.raw_insert(k.clone(), f(c));
        }
        s
    }

    pub fn try_map_coeffs(&self, f: impl Fn(&PadicScalar) -> Result<PadicScalar>) -> Result<Self> {
        let mut s = self.empty_like();
        for (k, c) in &self.coeffs {
            s.raw_insert(k.clone(), f(c)?);
        }
        Ok(s)
    }

    pub(crate) fn same_shape(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::ShapeMismatch(format!("{} vs {} variables", self.num_vars, other.num_vars)));
        }
        if self.radius != other.radius {
            return Err(Error::ShapeMismatch(format!("radius {} vs {}", self.radius, other.radius)));
        }
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut s = self.truncate(self.degree.min(other.degree));
        for (k, c) in &other.coeffs {
            s.add_term(k.clone(), c.clone());
        }
        Ok(s)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, c: &PadicScalar) -> Self {
        self.map_coeffs(|a| a * c)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let degree = self.degree.min(other.degree);
        let mut by_degree: Vec<Vec<(&MultiIndex, &PadicScalar)>> = vec![Vec::new(); degree as usize + 1];
        for (k, c) in &other.coeffs {
            let d = k.degree();
            if d <= degree {
                by_degree[d as usize].push((k, c));
            }
        }
        let mut acc: BTreeMap<MultiIndex, PadicScalar> = BTreeMap::new();
        for (k, a) in &self.coeffs {
            let dk = k.degree();
            if dk > degree {
                continue;
            }
            for bucket in &by_degree[..=(degree - dk) as usize] {
                for (l, b) in bucket {
                    let t = a * *b;
                    let idx = k.add(l);
                    match acc.get_mut(&idx) {
                        Some(x) => *x = &*x + &t,
                        None => {
                            acc.insert(idx, t);
                        }
                    }
                }
            }
        }
        let mut s = self.empty_like();
        s.degree = degree;
        for (k, c) in acc {
            s.raw_insert(k, c);
        }
        Ok(s)
    }

    pub fn powu(&self, e: u32) -> Result<Self> {
        let mut result = RadiusIndexedSeries::one(&self.field, self.num_vars, self.radius, self.degree)?;
        for _ in 0..e {
            result = result.mul(self)?;
        }
        Ok(result)
    }

    /// Gauss norm in valuation form at radius m >= n.
    pub fn gauss_norm(&self, m: u32) -> Result<GaussNorm> {
        if m < self.radius {
            return Err(Error::RadiusTooSmall { requested: m, radius: self.radius });
        }
        Ok(GaussNorm::compute(self, m))
    }

    /// Gauss norm at the series' own radius.
    pub fn norm(&self) -> GaussNorm {
        GaussNorm::compute(self, self.radius)
    }

    /// T_i -> T_i + c_i, requiring v(c_i) >= n.
    pub fn substitute(&self, shifts: &[PadicScalar]) -> Result<Self> {
        if shifts.len() != self.num_vars {
            return Err(Error::ShapeMismatch(format!("{} shifts for {} variables", shifts.len(), self.num_vars)));
        }
        for c in shifts {
            if !c.valuation().is_at_least(Val::from_integer(self.radius as i64)) {
                return Err(Error::ShiftTooLarge { got: c.valuation().to_string(), radius: self.radius });
            }
        }
        self.substitute_unchecked(shifts)
    }

    /// T_i -> T_i + c_i without the radius check.
    pub(crate) fn substitute_unchecked(&self, shifts: &[PadicScalar]) -> Result<Self> {
        let d = self.degree as usize;
        let pows: Vec<Vec<PadicScalar>> = shifts
            .iter()
            .map(|c| {
                let mut v = vec![PadicScalar::one(&self.field)];
                for i in 1..=d {
                    let next = &v[i - 1] * c;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = self.empty_like();
        for (k, a) in &self.coeffs {
            for j in k.below() {
                let diff = k.checked_sub(&j).unwrap();
                let mut t = a.scale_int_big(&k.binomial(&j));
                for (i, &e) in diff.0.iter().enumerate() {
                    if e > 0 {
                        t = &t * &pows[i][e as usize];
                    }
                }
                out.add_term(j, t);
            }
        }
        Ok(out)
    }

    /// Inverse by the geometric series, for a nonzero constant term a_0
    /// strictly dominating the rest in Gauss norm.
    pub fn invert(&self) -> Result<Self> {
        let a0 = self.constant_term();
        if a0.is_zero() {
            return Err(Error::NonUnitConstantTerm);
        }
        let v0 = a0.val_lower();
        let zero = MultiIndex::zero(self.num_vars);
        for (k, c) in &self.coeffs {
            if *k == zero {
                continue;
            }
            let w = c.val_lower() + Val::from_integer(self.radius as i64 * k.degree() as i64);
            if w <= v0 {
                return Err(Error::DominanceViolation);
            }
        }
        let inv0 = a0.inverse()?;
        // f = a_0 (1 + h), h without constant term, so h^j starts in degree j.
        let mut h = self.scale(&inv0);
        h.coeffs.remove(&zero);
        let minus_h = h.neg();
        let mut sum = RadiusIndexedSeries::one(&self.field, self.num_vars, self.radius, self.degree)?;
        let mut pw = sum.clone();
        for _ in 0..self.degree {
            pw = pw.mul(&minus_h)?;
            if pw.is_zero() {
                break;
            }
            sum = sum.add(&pw)?;
        }
        Ok(sum.scale(&inv0))
    }

    /// Formal partial derivative in direction j (1-based). The result is
    /// known to degree D - 1.
    pub fn derive(&self, j: usize) -> Result<Self> {
        if j == 0 || j > self.num_vars {
            return Err(Error::BadDirection { direction: j, dim: self.num_vars });
        }
        let mut out = self.empty_like();
        out.degree = self.degree.saturating_sub(1);
        for (k, c) in &self.coeffs {
            let kj = k.0[j - 1];
            if kj == 0 {
                continue;
            }
            let mut idx = k.clone();
            idx.0[j - 1] -= 1;
            out.raw_insert(idx, c.scale_int(kj as i64));
        }
        Ok(out)
    }

    /// Sum of a_k x^k over retained indices, for points with v(x_i) >= n.
    pub fn evaluate(&self, point: &[PadicScalar]) -> Result<PadicScalar> {
        if point.len() != self.num_vars {
            return Err(Error::ShapeMismatch(format!("point of length {} for {} variables", point.len(), self.num_vars)));
        }
        for x in point {
            if !x.valuation().is_at_least(Val::from_integer(self.radius as i64)) {
                return Err(Error::PointOutsideRadius { got: x.valuation().to_string(), radius: self.radius });
            }
        }
        self.evaluate_unchecked(point)
    }

    pub(crate) fn evaluate_unchecked(&self, point: &[PadicScalar]) -> Result<PadicScalar> {
        let d = self.degree as usize;
        let pows: Vec<Vec<PadicScalar>> = point
            .iter()
            .map(|x| {
                let mut v = vec![PadicScalar::one(&self.field)];
                for i in 1..=d {
                    let next = &v[i - 1] * x;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = PadicScalar::zero(&self.field);
        for (k, a) in &self.coeffs {
            let mut t = a.clone();
            for (i, &e) in k.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &pows[i][e as usize];
                }
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    /// f(g_1, ..., g_d) for series g_i in a common variable set without
    /// constant terms, truncated to the smaller degree.
    pub fn compose(&self, gs: &[RadiusIndexedSeries]) -> Result<Self> {
        if gs.len() != self.num_vars {
            return Err(Error::ShapeMismatch(format!("{} inner series for {} variables", gs.len(), self.num_vars)));
        }
        let Some(first) = gs.first() else {
            return Ok(self.clone());
        };
        for g in gs {
            g.same_shape(first)?;
            if !g.constant_term().is_zero() {
                return Err(Error::ShapeMismatch("inner series must have zero constant term".into()));
            }
        }
        if first.field != self.field {
            return Err(Error::MixedFields);
        }
        let degree = self.degree.min(gs.iter().map(|g| g.degree).min().unwrap());
        let gs: Vec<Self> = gs.iter().map(|g| g.truncate(degree)).collect();
        let last = gs.len() - 1;
        let mut last_pows = vec![RadiusIndexedSeries::one(&self.field, first.num_vars, first.radius, degree)?];
        for i in 1..=degree as usize {
            let next = last_pows[i - 1].mul(&gs[last])?;
            last_pows.push(next);
        }
        let terms: Vec<(MultiIndex, PadicScalar)> =
            self.coeffs.iter().filter(|(k, _)| k.degree() <= degree).map(|(k, c)| (k.clone(), c.clone())).collect();
        compose_rec(&terms, 0, &gs, &last_pows)
    }
}

/// Horner evaluation in variable `pos`, with the last variable expanded
/// through precomputed powers.
fn compose_rec(
    terms: &[(MultiIndex, PadicScalar)],
    pos: usize,
    gs: &[RadiusIndexedSeries],
    last_pows: &[RadiusIndexedSeries],
) -> Result<RadiusIndexedSeries> {
    let template = last_pows[0].empty_like();
    if pos == gs.len() - 1 {
        let mut out = template;
        for (k, c) in terms {
            let e = k.0[pos] as usize;
            out = out.add(&last_pows[e].scale(c))?;
        }
        return Ok(out);
    }
    let max_e = terms.iter().map(|(k, _)| k.0[pos]).max().unwrap_or(0);
    let mut acc = template.clone();
    for e in (0..=max_e).rev() {
        let group: Vec<(MultiIndex, PadicScalar)> = terms.iter().filter(|(k, _)| k.0[pos] == e).cloned().collect();
        acc = acc.mul(&gs[pos])?;
        if !group.is_empty() {
            acc = acc.add(&compose_rec(&group, pos + 1, gs, last_pows)?)?;
        }
    }
    Ok(acc)
}

impl PadicScalar {
    pub(crate) fn scale_int_big(&self, n: &num_bigint::BigInt) -> PadicScalar {
        use num_traits::ToPrimitive;
        match n.to_i64() {
            Some(i) => self.scale_int(i),
            None => self * &PadicScalar::from_bigint(self.field(), n, self.precision().max(self.field().precision()) + 64),
        }
    }
}

/// Gauss-norm lower bound helper: v(a_k) + m|k|.
pub(crate) fn weighted_valuation(c: &PadicScalar, k: &MultiIndex, m: u32) -> Valuation {
    c.valuation().shifted(Val::from_integer(m as i64 * k.degree() as i64))
}
