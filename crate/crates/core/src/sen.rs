//! Sen operators of analytic matrix actions, the map d -> exp(-u Theta) d,
//! kernels, and one-parameter subgroups.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::orbit::{principal_log, AnalyticMatrixAction};
use crate::padic::{pexp, Field, GaloisElement, PadicScalar, Val, Valuation};
use crate::series::{MultiIndex, RadiusIndexedSeries};
use crate::sl2::{symk_matrices, weight_spectrum, SL2Element};

/// Theta = log Mat(gamma) / log chi(gamma), with its integer spectrum when
/// there is one.
#[derive(Clone, Debug, PartialEq)]
pub struct SenDescriptor {
    pub theta: Matrix,
    pub spectrum: Option<Vec<i64>>,
    pub radius: u32,
}

/// Coefficients of exp(-u Theta) d as a polynomial in u of degree D.
#[derive(Clone, Debug, PartialEq)]
pub struct IotaExpansion {
    coeffs: Vec<Matrix>,
}

fn vp_factorial(p: u64, n: u32) -> i64 {
    let mut v = 0;
    let mut q = p;
    while q <= n as u64 {
        v += (n as u64 / q) as i64;
        q *= p;
    }
    v
}

/// Smallest radius n with 1 + p^n Z_p pro-cyclic and log, exp convergent on it.
pub fn base_radius(p: u64) -> u32 {
    if p == 2 {
        2
    } else {
        1
    }
}

/// Digits kept by log and exp at absolute precision N: the 1/k (or 1/k!)
/// denominators with k up to N cost floor(log_p N), and dividing by
/// log chi costs v(log chi) = radius more. This is N - 2 for p = 5, N = 20 at radius 1.
pub fn analytic_bound(p: u64, precision: i64, radius: u32) -> i64 {
    precision - ilog(p, precision.max(1) as u64) - radius as i64
}

/// Largest e with p^e <= x.
fn ilog(p: u64, x: u64) -> i64 {
    let mut e = 0;
    let mut q = p;
    while q <= x {
        e += 1;
        q *= p;
    }
    e
}

/// Theta from Mat(gamma) and chi(gamma), for v(chi - 1) = n exactly.
pub fn sen_operator_from_matrix(mat: &Matrix, chi: &PadicScalar, n: u32) -> Result<SenDescriptor> {
    let chi_base = chi.embed(&chi.field().base_field())?;
    let d = &chi_base - &PadicScalar::one(chi_base.field());
    if d.valuation().finite() != Some(Val::from_integer(n as i64)) {
        return Err(Error::NotAGenerator { radius: n });
    }
    let field = mat.field().ok_or_else(|| Error::ShapeMismatch("empty matrix".into()))?.clone();
    let l = principal_log(&chi_base, n)?.embed(&field)?;
    let x = mat.sub(&Matrix::identity(&field, mat.rows()))?;
    let p = field.p() as i64;
    if let Valuation::Finite(v) = x.valuation() {
        if v <= Val::new(1, p - 1) {
            return Err(Error::LogDivergence(v.to_string()));
        }
    }
    let inv_l = l.inverse()?;
    let theta = mat.log()?.scale(&inv_l);
    let spectrum = weight_spectrum(&theta).ok();
    Ok(SenDescriptor { theta, spectrum, radius: n })
}

/// The Sen operator of `action` read off from one generator gamma of
/// 1 + p^n Z_p, n the radius of the action.
pub fn sen_operator(action: &AnalyticMatrixAction, gamma: &GaloisElement) -> Result<SenDescriptor> {
    let n = action.radius();
    let chi = gamma.chi().ok_or(Error::NotAGenerator { radius: n })?;
    let chi = chi.embed(&action.field().base_field())?;
    if !crate::orbit::is_generator(&chi, n) {
        return Err(Error::NotAGenerator { radius: n });
    }
    sen_operator_from_matrix(&action.mat(&chi)?, &chi, n)
}

impl IotaExpansion {
    pub fn degree(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    /// Coefficient of u^j.
    pub fn coefficient(&self, j: u32) -> &Matrix {
        &self.coeffs[j as usize]
    }

    pub fn coefficients(&self) -> &[Matrix] {
        &self.coeffs
    }

    /// The constant coefficient, recovering d.
    pub fn constant_term(&self) -> &Matrix {
        &self.coeffs[0]
    }

    /// Entry (i, j) as a one-variable series in u at the given radius.
    pub fn entry_series(&self, i: usize, j: usize, radius: u32) -> Result<RadiusIndexedSeries> {
        let field = self.coeffs[0].field().expect("nonempty").clone();
        let terms = self.coeffs.iter().enumerate().map(|(e, m)| (MultiIndex(vec![e as u32]), m[(i, j)].clone()));
        RadiusIndexedSeries::from_terms(&field, 1, radius, self.degree(), terms)
    }

    /// Sum of c_j u^j.
    pub fn evaluate(&self, u: &PadicScalar) -> Result<Matrix> {
        let mut acc = self.coeffs.last().expect("nonempty").clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.scale(u).add(c)?;
        }
        Ok(acc)
    }
}

/// exp(-u Theta) d truncated at u^D: c_0 = d, c_j = -Theta c_(j-1) / j.
pub fn iota(d: &Matrix, theta: &SenDescriptor, degree: u32) -> Result<IotaExpansion> {
    let field = d.field().ok_or_else(|| Error::ShapeMismatch("empty basis".into()))?.clone();
    if degree as i64 >= field.p() as i64 * field.precision() || vp_factorial(field.p(), degree) >= field.precision() {
        return Err(Error::FactorialPrecisionLoss { degree });
    }
    let minus = theta.theta.scale(&PadicScalar::from_int(&field, -1));
    let mut coeffs = vec![d.clone()];
    for j in 1..=degree {
        let next = minus.mul(&coeffs[j as usize - 1])?.scale(&PadicScalar::from_ratio(&field, 1, j as i64));
        coeffs.push(next);
    }
    Ok(IotaExpansion { coeffs })
}

/// A basis of the right kernel of Theta.
pub fn sen_kernel(theta: &SenDescriptor) -> Result<Vec<Vec<PadicScalar>>> {
    theta.theta.kernel(None)
}

/// exp(t a), for v(t a) > 1/(p-1) or t a nilpotent.
pub fn one_param(a: &Matrix, t: &PadicScalar) -> Result<Matrix> {
    a.scale(t).exp()
}

/// Spectrum of the Sen operator of Sym^k of the torus model
/// g -> diag(chi(g)^(-s), chi(g)^s).
#[derive(Clone, Debug, PartialEq)]
pub struct SymkSpectrum {
    pub k: u32,
    pub s: PadicScalar,
    /// Eigenvalues of Theta / s.
    pub weights: Vec<i64>,
    pub matches_expected: bool,
}

/// Builds Mat(gamma) = Sym^k(diag(chi^(-s), chi^s)) for chi = 1 + p^n,
/// n = base_radius(p), and extracts its Sen operator.
pub fn sen_spectrum_symk(field: &Field, s: &PadicScalar, k: u32) -> Result<SymkSpectrum> {
    let n = base_radius(field.p());
    let chi = crate::orbit::generator_character(field, n, 1);
    let l = principal_log(&chi, n)?.embed(field)?;
    let s = s.embed(field)?;
    let sl = &s * &l;
    let t = pexp(&sl)?;
    let t_inv = pexp(&(-&sl))?;
    let zero = PadicScalar::zero(field);
    let g = SL2Element::new(Matrix::from_rows(vec![vec![t_inv, zero.clone()], vec![zero, t]])?)?;
    let rep = symk_matrices(field, k);
    let desc = sen_operator_from_matrix(&rep.group_matrix(&g), &chi, n)?;
    let weights = weight_spectrum(&desc.theta.scale(&s.inverse()?))?;
    let expected: Vec<i64> = (0..=k as i64).map(|i| 2 * i - k as i64).collect();
    let matches_expected =
        weights == expected && desc.theta.agrees_to(&rep.ops.h.scale(&s), analytic_bound(field.p(), field.precision(), n));
    Ok(SymkSpectrum { k, s, weights, matches_expected })
}
