use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{Basis, Field};
use super::valuation::{Val, Valuation};
use crate::error::{Error, Result};

/// An element of a finite extension K of Q_p known modulo p^prec.
///
/// The value is `p^shift * U` where `U` is an integral vector in the internal
/// power basis of K, reduced modulo `p^(prec - shift)` and not divisible by p.
/// Zero to precision is stored with `shift == prec` and all coefficients zero.
#[derive(Clone)]
pub struct PadicScalar {
    field: Field,
    coeffs: Vec<BigInt>,
    shift: i64,
    prec: i64,
}

fn rel(prec: i64, shift: i64) -> u32 {
    (prec - shift).max(0) as u32
}

impl PadicScalar {
    /// Build from an integral coefficient vector `v` representing `p^shift * v`
    /// known modulo `p^prec`.
    pub(crate) fn normalize(field: &Field, mut v: Vec<BigInt>, shift: i64, prec: i64) -> PadicScalar {
        debug_assert_eq!(v.len(), field.degree());
        let r = prec - shift;
        if r <= 0 {
            return PadicScalar::zero_with_prec(field, prec);
        }
        let r = r as u32;
        field.reduce_mod_pr(&mut v, r);
        let k = field.vp_vec(&v, r);
        if k == r {
            return PadicScalar::zero_with_prec(field, prec);
        }
        if k > 0 {
            let pk = field.pow_p(k);
            for c in v.iter_mut() {
                *c = &*c / &*pk;
            }
        }
        PadicScalar { field: field.clone(), coeffs: v, shift: shift + k as i64, prec }
    }

    pub fn zero(field: &Field) -> PadicScalar {
        PadicScalar::zero_with_prec(field, field.precision())
    }

    pub fn zero_with_prec(field: &Field, prec: i64) -> PadicScalar {
        PadicScalar { field: field.clone(), coeffs: vec![BigInt::zero(); field.degree()], shift: prec, prec }
    }

    pub fn one(field: &Field) -> PadicScalar {
        PadicScalar::from_int(field, 1)
    }

    pub fn from_int(field: &Field, n: i64) -> PadicScalar {
        PadicScalar::from_bigint(field, &BigInt::from(n), field.precision())
    }

    pub fn from_bigint(field: &Field, n: &BigInt, prec: i64) -> PadicScalar {
        let mut v = vec![BigInt::zero(); field.degree()];
        v[0] = n.clone();
        PadicScalar::normalize(field, v, 0, prec)
    }

    pub fn from_ratio(field: &Field, num: i64, den: i64) -> PadicScalar {
        PadicScalar::from_rational(field, &BigRational::new(num.into(), den.into()))
    }

    pub fn from_rational(field: &Field, q: &BigRational) -> PadicScalar {
        PadicScalar::from_rational_with_prec(field, q, field.precision())
    }

    /// The rational `q` known modulo `p^prec`.
    pub fn from_rational_with_prec(field: &Field, q: &BigRational, prec: i64) -> PadicScalar {
        let mut v = vec![BigInt::zero(); field.degree()];
        if q.is_zero() {
            return PadicScalar::zero_with_prec(field, prec);
        }
        let (num, sa) = strip_p(field, q.numer());
        let (den, sb) = strip_p(field, q.denom());
        let shift = sa - sb;
        let r = prec - shift;
        if r <= 0 {
            return PadicScalar::zero_with_prec(field, prec);
        }
        let m = field.pow_p(r as u32).into_owned();
        let inv = mod_inverse(&den, &m);
        v[0] = (num * inv).mod_floor(&m);
        PadicScalar::normalize(field, v, shift, prec)
    }

    /// Element with the given rational coordinates in the internal basis.
    pub fn from_coords(field: &Field, coords: &[BigRational]) -> Result<PadicScalar> {
        PadicScalar::from_coords_with_prec(field, coords, field.precision())
    }

    pub fn from_coords_with_prec(field: &Field, coords: &[BigRational], prec: i64) -> Result<PadicScalar> {
        if coords.len() != field.degree() {
            return Err(Error::Parse(format!("expected {} coordinates, got {}", field.degree(), coords.len())));
        }
        let base = field.base_field();
        let mut acc = PadicScalar::zero_with_prec(field, prec);
        for (i, q) in coords.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let c = PadicScalar::from_rational_with_prec(&base, q, prec);
            acc = &acc + &c.embed_basis_vector(field, i);
        }
        Ok(acc)
    }

    /// `self * X^i` for a base-field scalar, placed in `field`.
    fn embed_basis_vector(&self, field: &Field, i: usize) -> PadicScalar {
        let mut v = vec![BigInt::zero(); field.degree()];
        v[i] = self.coeffs[0].clone();
        if self.is_zero() {
            return PadicScalar::zero_with_prec(field, self.prec);
        }
        PadicScalar::normalize(field, v, self.shift, self.prec)
    }

    /// Build from an integral coefficient vector (in the internal basis) times p^shift.
    pub fn from_integral_coords(field: &Field, coords: Vec<BigInt>, shift: i64, prec: i64) -> Result<PadicScalar> {
        if coords.len() != field.degree() {
            return Err(Error::Parse(format!("expected {} coordinates, got {}", field.degree(), coords.len())));
        }
        Ok(PadicScalar::normalize(field, coords, shift, prec))
    }

    /// The class of X in the defining quotient: zeta for cyclotomic fields,
    /// the chosen generator for unramified or user fields. `None` for Q_p.
    pub fn primitive_element(field: &Field) -> Option<PadicScalar> {
        if field.degree() == 1 {
            return None;
        }
        let mut v = vec![BigInt::zero(); field.degree()];
        v[1] = BigInt::one();
        Some(PadicScalar::normalize(field, v, 0, field.precision()))
    }

    /// A uniformizer: zeta - 1, the Eisenstein generator, or p.
    pub fn uniformizer(field: &Field) -> PadicScalar {
        match field.basis() {
            Basis::Zeta { .. } => PadicScalar::primitive_element(field).unwrap() - PadicScalar::one(field),
            Basis::Eisenstein => PadicScalar::primitive_element(field).unwrap(),
            Basis::Trivial | Basis::Unramified => PadicScalar::from_int(field, field.p() as i64),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Absolute precision: the element is known modulo p^precision.
    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// Number of known p-adic digits beyond the leading power of p.
    pub fn relative_precision(&self) -> i64 {
        self.prec - self.shift
    }

    /// Largest power of p dividing the element (its valuation rounded down).
    pub fn p_shift(&self) -> i64 {
        self.shift
    }

    /// Unit-part coefficients in the internal basis, each in `[0, p^relprec)`.
    pub fn unit_coords(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.shift >= self.prec
    }

    pub fn valuation(&self) -> Valuation {
        if self.is_zero() {
            return Valuation::AtLeast(self.prec);
        }
        let j = self.field.fractional_valuation_units(&self.coeffs) as i64;
        let e = self.field.ramification_index() as i64;
        Valuation::Finite(Val::from_integer(self.shift) + Val::new(j, e))
    }

    /// Valuation as a rational lower bound (exact when nonzero).
    pub fn val_lower(&self) -> Val {
        self.valuation().lower_bound()
    }

    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.shift == 0 && self.field.is_unit_raw(&self.coeffs)
    }

    /// True when `self` has no denominator.
    pub fn is_integral(&self) -> bool {
        self.is_zero() || self.shift >= 0
    }

    /// True when `self` is zero modulo p^bound.
    pub fn is_zero_mod(&self, bound: i64) -> bool {
        self.valuation().is_at_least(Val::from_integer(bound))
    }

    /// Lower the precision to `prec` (no effect if already lower).
    pub fn truncate(&self, prec: i64) -> PadicScalar {
        if prec >= self.prec {
            return self.clone();
        }
        PadicScalar::normalize(&self.field, self.coeffs.clone(), self.shift, prec)
    }

    /// Treat the stored digits as exact and declare precision `prec`.
    pub fn lift_precision(&self, prec: i64) -> PadicScalar {
        if prec <= self.prec {
            return self.truncate(prec);
        }
        if self.is_zero() {
            return PadicScalar::zero_with_prec(&self.field, prec);
        }
        PadicScalar { field: self.field.clone(), coeffs: self.coeffs.clone(), shift: self.shift, prec }
    }

    /// Integral coordinates scaled to a common shift: `self = p^s * v`.
    pub(crate) fn scaled_coords(&self, s: i64) -> Vec<BigInt> {
        debug_assert!(s <= self.shift);
        if self.is_zero() {
            return vec![BigInt::zero(); self.field.degree()];
        }
        let k = (self.shift - s) as u32;
        if k == 0 {
            return self.coeffs.clone();
        }
        let pk = self.field.pow_p(k);
        self.coeffs.iter().map(|c| c * &*pk).collect()
    }

    fn check_same(&self, other: &PadicScalar) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &PadicScalar) -> Result<PadicScalar> {
        self.check_same(other)?;
        Ok(self.add_unchecked(other))
    }

    fn add_unchecked(&self, other: &PadicScalar) -> PadicScalar {
        let prec = self.prec.min(other.prec);
        if other.is_zero() {
            return self.truncate(prec);
        }
        if self.is_zero() {
            return other.truncate(prec);
        }
        let s = self.shift.min(other.shift);
        if s >= prec {
            return PadicScalar::zero_with_prec(&self.field, prec);
        }
        let a = self.scaled_coords(s);
        let b = other.scaled_coords(s);
        let v = a.into_iter().zip(b).map(|(x, y)| x + y).collect();
        PadicScalar::normalize(&self.field, v, s, prec)
    }

    pub fn try_sub(&self, other: &PadicScalar) -> Result<PadicScalar> {
        self.try_add(&other.neg_ref())
    }

    fn neg_ref(&self) -> PadicScalar {
        if self.is_zero() {
            return self.clone();
        }
        let v = self.coeffs.iter().map(|c| -c).collect();
        PadicScalar::normalize(&self.field, v, self.shift, self.prec)
    }

    pub fn try_mul(&self, other: &PadicScalar) -> Result<PadicScalar> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &PadicScalar) -> PadicScalar {
        let prec = (self.prec + other.shift).min(other.prec + self.shift);
        let s = self.shift + other.shift;
        if self.is_zero() || other.is_zero() {
            return PadicScalar::zero_with_prec(&self.field, prec);
        }
        let v = self.field.mul_raw(&self.coeffs, &other.coeffs, rel(prec, s));
        PadicScalar::normalize(&self.field, v, s, prec)
    }

    /// Multiply by an integer, exactly.
    pub fn scale_int(&self, n: i64) -> PadicScalar {
        if n == 0 {
            // n * x is divisible by every power of p the precision allows.
            return PadicScalar::zero_with_prec(&self.field, self.prec.max(self.field.precision()));
        }
        let (m, k) = strip_p(&self.field, &BigInt::from(n));
        if self.is_zero() {
            return PadicScalar::zero_with_prec(&self.field, self.prec + k);
        }
        let v = self.coeffs.iter().map(|c| c * &m).collect();
        PadicScalar::normalize(&self.field, v, self.shift + k, self.prec + k)
    }

    /// Multiply by p^k, exactly.
    pub fn mul_p_pow(&self, k: i64) -> PadicScalar {
        PadicScalar { field: self.field.clone(), coeffs: self.coeffs.clone(), shift: self.shift + k, prec: self.prec + k }
    }

    pub fn inverse(&self) -> Result<PadicScalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZeroToPrecision);
        }
        let r = rel(self.prec, self.shift);
        let (w, s2) = self.field.inverse_raw(&self.coeffs, r);
        let v = self.valuation().finite().unwrap();
        // Absolute precision of 1/x is N - 2 v(x).
        let prec = (Val::from_integer(self.prec) - v * 2).floor().to_integer();
        Ok(PadicScalar::normalize(&self.field, w, s2 - self.shift, prec))
    }

    pub fn try_div(&self, other: &PadicScalar) -> Result<PadicScalar> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(&other.inverse()?))
    }

    pub fn pow(&self, e: i64) -> Result<PadicScalar> {
        if e < 0 {
            return self.inverse()?.pow(-e);
        }
        let mut result = PadicScalar::one(&self.field).lift_precision(i64::MAX / 4);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        if result.prec > i64::MAX / 8 {
            result = result.truncate(self.field.precision().max(self.prec));
        }
        Ok(result)
    }

    /// Power with a nonnegative exponent.
    pub fn powu(&self, e: u64) -> PadicScalar {
        self.pow(e as i64).expect("nonnegative exponent")
    }

    /// Equality to the smaller of the two precisions.
    pub fn eq_to_precision(&self, other: &PadicScalar) -> bool {
        self.field == other.field && self.sub_ref(other).is_zero()
    }

    fn sub_ref(&self, other: &PadicScalar) -> PadicScalar {
        self.add_unchecked(&other.neg_ref())
    }

    /// Whether `self - other` has valuation at least `bound`.
    pub fn agrees_to(&self, other: &PadicScalar, bound: i64) -> bool {
        self.field == other.field && self.sub_ref(other).is_zero_mod(bound)
    }

    /// The rational number `p^shift * U` for an element of Q_p, with the
    /// representative of U in `[0, p^relprec)`.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.field.degree() != 1 {
            return None;
        }
        Some(self.rational_of(&self.coeffs[0]))
    }

    fn rational_of(&self, c: &BigInt) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let p = self.field.p_big().clone();
        if self.shift >= 0 {
            BigRational::from_integer(c * num_traits::pow(p, self.shift as usize))
        } else {
            BigRational::new(c.clone(), num_traits::pow(p, (-self.shift) as usize))
        }
    }

    /// Smallest rational a/b (|a|, |b| <= sqrt(p^r / 2), r the relative
    /// precision) congruent to an element of Q_p, times p^shift.
    pub fn rational_reconstruct(&self) -> Option<BigRational> {
        if self.field.degree() != 1 {
            return None;
        }
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        let m = self.field.pow_p(rel(self.prec, self.shift)).into_owned();
        let (a, b) = reconstruct_mod(&self.coeffs[0], &m)?;
        let p = self.field.p_big().clone();
        let q = BigRational::new(a, b);
        let scale = BigRational::from_integer(num_traits::pow(p, self.shift.unsigned_abs() as usize));
        Some(if self.shift >= 0 { q * scale } else { q / scale })
    }

    /// Small integer represented by an element of Q_p, if any (symmetric residue).
    pub fn to_small_integer(&self) -> Option<i64> {
        let q = self.rational_reconstruct()?;
        if q.is_integer() {
            q.to_integer().to_i64()
        } else {
            None
        }
    }

    /// Coordinates in the internal basis, as elements of Q_p.
    pub fn base_coords(&self) -> Vec<PadicScalar> {
        let base = self.field.base_field();
        self.coeffs
            .iter()
            .map(|c| {
                if self.is_zero() {
                    PadicScalar::zero_with_prec(&base, self.prec)
                } else {
                    PadicScalar::normalize(&base, vec![c.clone()], self.shift, self.prec)
                }
            })
            .collect()
    }

    /// Reassemble from internal-basis coordinates in Q_p.
    pub fn from_base_coords(field: &Field, coords: &[PadicScalar]) -> Result<PadicScalar> {
        if coords.len() != field.degree() {
            return Err(Error::ShapeMismatch(format!("expected {} coordinates, got {}", field.degree(), coords.len())));
        }
        let prec = coords.iter().map(|c| c.prec).min().unwrap_or(field.precision());
        let s = coords.iter().map(|c| c.shift).min().unwrap_or(prec).min(prec);
        let v = coords.iter().map(|c| if c.is_zero() { BigInt::zero() } else { c.scaled_coords(s)[0].clone() }).collect();
        Ok(PadicScalar::normalize(field, v, s, prec))
    }

    /// Image of an element of Q_p (or of a lower cyclotomic level) in `field`.
    pub fn embed(&self, field: &Field) -> Result<PadicScalar> {
        if self.field == *field {
            return Ok(self.clone());
        }
        if self.field.degree() == 1 && field.p() == self.field.p() {
            let mut v = vec![BigInt::zero(); field.degree()];
            if self.is_zero() {
                return Ok(PadicScalar::zero_with_prec(field, self.prec));
            }
            v[0] = self.coeffs[0].clone();
            return Ok(PadicScalar::normalize(field, v, self.shift, self.prec));
        }
        match (self.field.cyclotomic_level(), field.cyclotomic_level()) {
            (Some(n), Some(m)) if n <= m && field.p() == self.field.p() => {
                let step = (field.p()).pow(m - n) as usize;
                let mut v = vec![BigInt::zero(); field.degree()];
                if self.is_zero() {
                    return Ok(PadicScalar::zero_with_prec(field, self.prec));
                }
                for (j, c) in self.coeffs.iter().enumerate() {
                    v[j * step] = c.clone();
                }
                Ok(PadicScalar::normalize(field, v, self.shift, self.prec))
            }
            _ => Err(Error::MixedFields),
        }
    }

    /// Express an element of K_m lying in K_n (n <= m) in the level-n field.
    /// Coordinates outside the subfield must vanish to precision.
    pub fn restrict_to_level(&self, target: &Field) -> Result<PadicScalar> {
        let (Some(m), Some(n)) = (self.field.cyclotomic_level(), target.cyclotomic_level()) else {
            return Err(Error::MixedFields);
        };
        if n > m {
            return Err(Error::LevelMismatch { target: n, level: m });
        }
        let step = self.field.p().pow(m - n) as usize;
        if self.is_zero() {
            return Ok(PadicScalar::zero_with_prec(target, self.prec));
        }
        let mut v = vec![BigInt::zero(); target.degree()];
        for (j, c) in self.coeffs.iter().enumerate() {
            if j % step == 0 {
                v[j / step] = c.clone();
            } else if !c.is_zero() {
                return Err(Error::MixedFields);
            }
        }
        Ok(PadicScalar::normalize(target, v, self.shift, self.prec))
    }

    /// Teichmueller representative of a unit: the root of unity of order
    /// prime to p with the same residue.
    pub fn teichmuller(&self) -> Result<PadicScalar> {
        if !self.is_unit() {
            return Err(Error::NotAUnit);
        }
        let q = self.field.residue_cardinality();
        let mut x = self.clone();
        for _ in 0..=self.prec.max(1) * self.field.ramification_index() as i64 + 2 {
            let y = x.powu(q);
            if y.eq_to_precision(&x) {
                return Ok(y);
            }
            x = y;
        }
        Ok(x)
    }
}

fn strip_p(field: &Field, n: &BigInt) -> (BigInt, i64) {
    let p = field.p_big();
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return (n, k);
        }
        n = q;
        k += 1;
    }
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let g = a.mod_floor(m).extended_gcd(m);
    debug_assert!(g.gcd.is_one());
    g.x.mod_floor(m)
}

/// Rational reconstruction of `u mod m` by the half extended Euclidean algorithm.
fn reconstruct_mod(u: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if t1.is_negative() {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

impl PartialEq for PadicScalar {
    /// Equality to precision.
    fn eq(&self, other: &Self) -> bool {
        self.eq_to_precision(other)
    }
}

impl fmt::Debug for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::format_scalar(self))
    }
}

impl fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::format_scalar(self))
    }
}

// Operator forms panic on mixed fields; use the `try_*` methods to handle that case.
macro_rules! binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&PadicScalar> for &PadicScalar {
            type Output = PadicScalar;
            fn $m(self, rhs: &PadicScalar) -> PadicScalar {
                self.$imp(rhs).expect("operands live in different fields")
            }
        }
        impl $tr<PadicScalar> for PadicScalar {
            type Output = PadicScalar;
            fn $m(self, rhs: PadicScalar) -> PadicScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&PadicScalar> for PadicScalar {
            type Output = PadicScalar;
            fn $m(self, rhs: &PadicScalar) -> PadicScalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<PadicScalar> for &PadicScalar {
            type Output = PadicScalar;
            fn $m(self, rhs: PadicScalar) -> PadicScalar {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &PadicScalar {
    type Output = PadicScalar;
    fn neg(self) -> PadicScalar {
        self.neg_ref()
    }
}

impl Neg for PadicScalar {
    type Output = PadicScalar;
    fn neg(self) -> PadicScalar {
        self.neg_ref()
    }
}
