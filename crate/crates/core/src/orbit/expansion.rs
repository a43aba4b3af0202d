use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::padic::{Field, PadicScalar, Valuation};
use crate::series::MultiIndex;

use super::chart::AnalyticMatrixAction;

/// Vector-valued coefficient.
pub type Vector = Vec<PadicScalar>;

/// An element w with its orbit coefficients: g(w) = sum_k l(g)^k w_k in a
/// chart of dimension d, with w_0 = w.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitExpansion {
    field: Field,
    ambient_dim: usize,
    chart_dim: usize,
    radius: u32,
    degree: u32,
    coeffs: BTreeMap<MultiIndex, Vector>,
}

pub(crate) fn vector_valuation(v: &[PadicScalar]) -> Valuation {
    v.iter().map(|x| x.valuation()).reduce(Valuation::min).unwrap_or(Valuation::AtLeast(i64::MAX / 4))
}

pub(crate) fn vector_is_zero_mod(v: &[PadicScalar], bound: i64) -> bool {
    v.iter().all(|x| x.is_zero_mod(bound))
}

impl OrbitExpansion {
    pub fn new(field: &Field, ambient_dim: usize, chart_dim: usize, radius: u32, degree: u32) -> Self {
        OrbitExpansion { field: field.clone(), ambient_dim, chart_dim, radius, degree, coeffs: BTreeMap::new() }
    }

    pub fn from_coefficients(
        field: &Field,
        ambient_dim: usize,
        chart_dim: usize,
        radius: u32,
        degree: u32,
        coeffs: impl IntoIterator<Item = (MultiIndex, Vector)>,
    ) -> Result<Self> {
        let mut o = OrbitExpansion::new(field, ambient_dim, chart_dim, radius, degree);
        for (k, v) in coeffs {
            o.set(k, v)?;
        }
        Ok(o)
    }

    /// The constant orbit of a fixed vector.
    pub fn constant(w: Vector, radius: u32, degree: u32) -> Result<Self> {
        let field = w.first().ok_or_else(|| Error::ShapeMismatch("empty vector".into()))?.field().clone();
        let dim = w.len();
        OrbitExpansion::from_coefficients(&field, dim, 1, radius, degree, [(MultiIndex::zero(1), w)])
    }

    /// Orbit of `w` under a matrix action whose coordinates are fixed by the
    /// acting subgroup: w_k = w * M_k.
    pub fn from_action(action: &AnalyticMatrixAction, w: &[PadicScalar], degree: u32) -> Result<Self> {
        if w.len() != action.dim() {
            return Err(Error::ShapeMismatch(format!("vector of length {} for a {}-dimensional action", w.len(), action.dim())));
        }
        let ms = action.expansion(degree)?;
        let mut o = OrbitExpansion::new(action.field(), action.dim(), 1, action.radius(), degree);
        for (k, m) in ms.iter().enumerate() {
            o.set(MultiIndex(vec![k as u32]), m.apply_left(w)?)?;
        }
        Ok(o)
    }

    pub fn set(&mut self, k: MultiIndex, v: Vector) -> Result<()> {
        if k.dim() != self.chart_dim {
            return Err(Error::ShapeMismatch(format!("index {:?} in a chart of dimension {}", k.0, self.chart_dim)));
        }
        if v.len() != self.ambient_dim {
            return Err(Error::ShapeMismatch(format!("vector of length {}, expected {}", v.len(), self.ambient_dim)));
        }
        if v.iter().any(|x| x.field() != &self.field) {
            return Err(Error::MixedFields);
        }
        if k.degree() > self.degree {
            return Ok(());
        }
        if v.iter().all(|x| x.is_zero()) {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, v);
        }
        Ok(())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn chart_dim(&self) -> usize {
        self.chart_dim
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (&MultiIndex, &Vector)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, k: &MultiIndex) -> Vector {
        self.coeffs.get(k).cloned().unwrap_or_else(|| vec![PadicScalar::zero(&self.field); self.ambient_dim])
    }

    /// w_0 = w.
    pub fn base(&self) -> Vector {
        self.coeff(&MultiIndex::zero(self.chart_dim))
    }

    /// min_k v(w_k) + m|k|.
    pub fn gauss_norm(&self, m: u32) -> Valuation {
        self.coeffs
            .iter()
            .map(|(k, v)| vector_valuation(v).shifted(crate::padic::Val::from_integer(m as i64 * k.degree() as i64)))
            .reduce(Valuation::min)
            .unwrap_or(Valuation::AtLeast(self.field.precision()))
    }

    /// Decay relative to w: v(w_k) + slope * |k| >= v(w_0) for all k, i.e.
    /// |w_k| <= p^{slope |k|} |w|. Orbits on the radius-n subgroup satisfy
    /// it with slope n; reconstruction needs slope n - 1.
    pub fn check_decay(&self, slope: u32) -> Result<()> {
        let w0 = vector_valuation(&self.base()).lower_bound();
        for (k, v) in &self.coeffs {
            let val = vector_valuation(v);
            if val.is_zero_marker() {
                continue;
            }
            if val.lower_bound() + crate::padic::Val::from_integer(slope as i64 * k.degree() as i64) < w0 {
                return Err(Error::DecayViolation(format!("{:?}", k.0)));
            }
        }
        Ok(())
    }

    /// nabla_tau(w) = w_{1_tau}; directions are 1-based.
    pub fn nabla(&self, direction: usize) -> Result<Vector> {
        if direction == 0 || direction > self.chart_dim {
            return Err(Error::BadDirection { direction, dim: self.chart_dim });
        }
        Ok(self.coeff(&MultiIndex::unit(self.chart_dim, direction - 1)))
    }

    /// True iff nabla vanishes to `bound` in every direction except `identity_direction`.
    pub fn is_f_analytic(&self, identity_direction: usize, bound: i64) -> Result<bool> {
        if identity_direction == 0 || identity_direction > self.chart_dim {
            return Err(Error::BadDirection { direction: identity_direction, dim: self.chart_dim });
        }
        for tau in 1..=self.chart_dim {
            if tau != identity_direction && !vector_is_zero_mod(&self.nabla(tau)?, bound) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Checks w_k = w * prod_tau ops[tau]^{k_tau} / k! to `bound`, where the
    /// ops are the (commuting) matrices of nabla_tau acting on row vectors.
    pub fn check_nabla_consistency(&self, ops: &[Matrix], bound: i64) -> Result<bool> {
        if ops.len() != self.chart_dim {
            return Err(Error::ShapeMismatch(format!("{} operators for a chart of dimension {}", ops.len(), self.chart_dim)));
        }
        let w = self.base();
        for k in MultiIndex::all_up_to(self.chart_dim, self.degree) {
            let mut v = w.clone();
            for (tau, &e) in k.0.iter().enumerate() {
                for _ in 0..e {
                    v = ops[tau].apply_left(&v)?;
                }
            }
            let inv = PadicScalar::from_rational(&self.field, &BigRational::new(BigInt::from(1), k.factorial()));
            let expect: Vector = v.iter().map(|x| x * &inv).collect();
            let got = self.coeff(&k);
            if !got.iter().zip(&expect).all(|(a, b)| a.agrees_to(b, bound)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// sum_k l^k w_k at chart coordinates `l`.
    pub fn evaluate(&self, l: &[PadicScalar]) -> Result<Vector> {
        if l.len() != self.chart_dim {
            return Err(Error::ShapeMismatch(format!("{} coordinates for a chart of dimension {}", l.len(), self.chart_dim)));
        }
        let l: Vec<PadicScalar> = l.iter().map(|x| x.embed(&self.field)).collect::<Result<_>>()?;
        let mut acc = vec![PadicScalar::zero(&self.field); self.ambient_dim];
        for (k, v) in &self.coeffs {
            let mut mono = PadicScalar::one(&self.field);
            for (x, &e) in l.iter().zip(&k.0) {
                mono = &mono * &x.powu(e as u64);
            }
            for (a, c) in acc.iter_mut().zip(v) {
                *a = &*a + &(&mono * c);
            }
        }
        Ok(acc)
    }
}

/// The matrices of nabla for a one-dimensional chart action: M_1.
pub fn nabla_operator(action: &AnalyticMatrixAction) -> Result<Matrix> {
    Ok(action.expansion(1)?.pop().expect("degree one"))
}
