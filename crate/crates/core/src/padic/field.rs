use std::borrow::Cow;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::fp;
use crate::error::{Error, Result};

/// Which finite extension of Q_p a field is.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldKind {
    Base,
    /// Q_p(zeta_{p^level}).
    Cyclotomic {
        level: u32,
    },
    /// Q_p[X]/(poly), poly monic and irreducible mod p; coefficients lowest first.
    Unramified {
        poly: Vec<i64>,
    },
    /// Q_p[X]/(poly) for a monic poly that is Eisenstein or irreducible mod p.
    /// No Galois action data is attached.
    User {
        poly: Vec<i64>,
    },
}

/// Serializable description of a field: `{"p":5,"kind":"cyclotomic","level":1,"precision":20}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    #[serde(flatten)]
    pub kind: FieldKind,
    /// Absolute precision, in powers of p, given to exact constants.
    pub precision: i64,
}

impl FieldDescriptor {
    pub fn base(p: u64, precision: i64) -> Self {
        FieldDescriptor { p, kind: FieldKind::Base, precision }
    }

    pub fn cyclotomic(p: u64, level: u32, precision: i64) -> Self {
        FieldDescriptor { p, kind: FieldKind::Cyclotomic { level }, precision }
    }

    pub fn unramified(p: u64, poly: Vec<i64>, precision: i64) -> Self {
        FieldDescriptor { p, kind: FieldKind::Unramified { poly }, precision }
    }
}

/// How the internal power basis relates to the valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Basis {
    /// Q_p itself.
    Trivial,
    /// Generator reduces to a generator of F_q; e = 1.
    Unramified,
    /// Generator is a uniformizer with Eisenstein minimal polynomial.
    Eisenstein,
    /// Generator is zeta_{p^m}; valuations go through the basis (zeta - 1)^i.
    Zeta { order: usize },
}

pub(crate) struct FieldData {
    pub(crate) desc: FieldDescriptor,
    pub(crate) p: BigInt,
    pub(crate) degree: usize,
    pub(crate) e: u32,
    pub(crate) f: u32,
    pub(crate) basis: Basis,
    /// Monic defining polynomial, lowest first, length degree + 1.
    pub(crate) modulus: Vec<BigInt>,
    /// Nonzero coefficients of the defining polynomial below the leading one.
    reducers: Vec<(usize, BigInt)>,
    residue_modulus: fp::FpPoly,
    powers: Vec<BigInt>,
    /// C(j, i) mod p for the zeta basis, row j.
    binom_mod_p: OnceLock<Vec<Vec<u64>>>,
    frobenius: RwLock<Option<(u32, FrobeniusMatrix)>>,
    base: OnceLock<Field>,
}

type FrobeniusMatrix = Arc<Vec<Vec<BigInt>>>;

/// A finite extension of Q_p together with its working precision. Cheap to
/// clone; scalars hold a handle to their parent.
#[derive(Clone)]
pub struct Field(pub(crate) Arc<FieldData>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({:?})", self.0.desc)
    }
}

/// Fields compare by prime and kind; the default precision is not part of
/// the identity since every scalar tracks its own precision.
impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.desc.p == other.0.desc.p && self.0.desc.kind == other.0.desc.kind)
    }
}

impl Eq for Field {}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn is_eisenstein(poly: &[i64], p: u64) -> bool {
    let p = p as i64;
    let n = poly.len() - 1;
    poly[..n].iter().all(|c| c % p == 0) && poly[0] % (p * p) != 0
}

impl Field {
    pub fn new(desc: FieldDescriptor) -> Result<Field> {
        let p = desc.p;
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > u32::MAX as u64 {
            return Err(Error::InvalidField(format!("prime {p} is too large")));
        }
        if desc.precision < 1 {
            return Err(Error::InvalidField("precision must be at least 1".into()));
        }
        let (basis, modulus_small, e, f): (Basis, Vec<i64>, u32, u32) = match &desc.kind {
            FieldKind::Base => (Basis::Trivial, vec![0, 1], 1, 1),
            FieldKind::Cyclotomic { level } => {
                let m = *level;
                if m == 0 {
                    return Err(Error::InvalidField("cyclotomic level must be at least 1".into()));
                }
                let pm1 = p
                    .checked_pow(m - 1)
                    .filter(|&v| v <= 1 << 16)
                    .ok_or_else(|| Error::InvalidField(format!("cyclotomic level {m} is too large")))? as usize;
                let order = pm1 * p as usize;
                let degree = order - pm1;
                let mut poly = vec![0i64; degree + 1];
                for t in 0..p as usize {
                    poly[t * pm1] = 1;
                }
                (Basis::Zeta { order }, poly, degree as u32, 1)
            }
            FieldKind::Unramified { poly } => {
                check_monic(poly)?;
                if !fp::is_irreducible(&fp::reduce_coeffs(poly, p), p) {
                    return Err(Error::InvalidField(format!("polynomial {poly:?} is not irreducible modulo {p}")));
                }
                let f = (poly.len() - 1) as u32;
                let basis = if f == 1 { Basis::Trivial } else { Basis::Unramified };
                (basis, poly.clone(), 1, f)
            }
            FieldKind::User { poly } => {
                check_monic(poly)?;
                let d = (poly.len() - 1) as u32;
                if is_eisenstein(poly, p) {
                    (Basis::Eisenstein, poly.clone(), d, 1)
                } else if fp::is_irreducible(&fp::reduce_coeffs(poly, p), p) {
                    (Basis::Unramified, poly.clone(), 1, d)
                } else {
                    return Err(Error::InvalidField(format!("polynomial {poly:?} is neither Eisenstein nor irreducible modulo {p}")));
                }
            }
        };
        let degree = modulus_small.len() - 1;
        debug_assert_eq!((e * f) as usize, degree);
        let modulus: Vec<BigInt> = modulus_small.iter().map(|&c| BigInt::from(c)).collect();
        let reducers = modulus[..degree].iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect();
        let pb = BigInt::from(p);
        let npow = (8 * desc.precision as usize + 64).min(4096);
        let mut powers = Vec::with_capacity(npow);
        let mut acc = BigInt::one();
        for _ in 0..npow {
            powers.push(acc.clone());
            acc *= &pb;
        }
        let residue_modulus = fp::reduce_coeffs(&modulus_small, p);
        Ok(Field(Arc::new(FieldData {
            desc,
            p: pb,
            degree,
            e,
            f,
            basis,
            modulus,
            reducers,
            residue_modulus,
            powers,
            binom_mod_p: OnceLock::new(),
            frobenius: RwLock::new(None),
            base: OnceLock::new(),
        })))
    }

    pub fn base(p: u64, precision: i64) -> Result<Field> {
        Field::new(FieldDescriptor::base(p, precision))
    }

    pub fn cyclotomic(p: u64, level: u32, precision: i64) -> Result<Field> {
        Field::new(FieldDescriptor::cyclotomic(p, level, precision))
    }

    pub fn unramified(p: u64, poly: Vec<i64>, precision: i64) -> Result<Field> {
        Field::new(FieldDescriptor::unramified(p, poly, precision))
    }

    /// The unramified extension of degree `f`, defined by the first monic
    /// polynomial irreducible mod p in lexicographic order of the digits.
    pub fn unramified_of_degree(p: u64, f: u32, precision: i64) -> Result<Field> {
        if f == 0 || f > 12 {
            return Err(Error::InvalidField(format!("unsupported residue degree {f}")));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let f = f as usize;
        let total = (p as u128).checked_pow(f as u32).ok_or_else(|| Error::InvalidField("search space too large".into()))?;
        for idx in 0..total {
            let mut poly = vec![0i64; f + 1];
            let mut r = idx;
            for c in poly.iter_mut().take(f) {
                *c = (r % p as u128) as i64;
                r /= p as u128;
            }
            poly[f] = 1;
            if fp::is_irreducible(&fp::reduce_coeffs(&poly, p), p) {
                return Field::unramified(p, poly, precision);
            }
        }
        Err(Error::InvalidField(format!("no irreducible polynomial of degree {f} mod {p}")))
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.0.desc
    }

    pub fn p(&self) -> u64 {
        self.0.desc.p
    }

    pub fn p_big(&self) -> &BigInt {
        &self.0.p
    }

    pub fn precision(&self) -> i64 {
        self.0.desc.precision
    }

    /// [K : Q_p].
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn ramification_index(&self) -> u32 {
        self.0.e
    }

    pub fn residue_degree(&self) -> u32 {
        self.0.f
    }

    /// Size of the residue field.
    pub fn residue_cardinality(&self) -> u64 {
        self.p().pow(self.0.f)
    }

    /// Cyclotomic level m, when this is Q_p(zeta_{p^m}).
    pub fn cyclotomic_level(&self) -> Option<u32> {
        match self.0.desc.kind {
            FieldKind::Cyclotomic { level } => Some(level),
            _ => None,
        }
    }

    pub fn is_base(&self) -> bool {
        self.0.basis == Basis::Trivial && self.0.degree == 1
    }

    /// Q_p at the same prime and precision.
    pub fn base_field(&self) -> Field {
        if self.is_base() {
            return self.clone();
        }
        self.0.base.get_or_init(|| Field::base(self.p(), self.precision()).expect("valid prime")).clone()
    }

    /// The same field with a different precision for new constants.
    pub fn with_precision(&self, precision: i64) -> Result<Field> {
        let mut desc = self.0.desc.clone();
        desc.precision = precision;
        Field::new(desc)
    }

    pub(crate) fn pow_p(&self, r: u32) -> Cow<'_, BigInt> {
        match self.0.powers.get(r as usize) {
            Some(v) => Cow::Borrowed(v),
            None => Cow::Owned(num_traits::pow(self.0.p.clone(), r as usize)),
        }
    }

    // ---- raw coefficient arithmetic: integer vectors of length `degree` ----

    pub(crate) fn reduce_mod_pr(&self, v: &mut [BigInt], r: u32) {
        let m = self.pow_p(r);
        for c in v.iter_mut() {
            if c.is_negative() || *c >= *m {
                *c = c.mod_floor(&m);
            }
        }
    }

    /// Reduce a polynomial of any length modulo the defining polynomial.
    pub(crate) fn reduce_poly(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.0.degree;
        if v.len() > d {
            for i in (d..v.len()).rev() {
                if v[i].is_zero() {
                    continue;
                }
                let c = std::mem::take(&mut v[i]);
                for (j, a) in &self.0.reducers {
                    let t = &c * a;
                    v[i - d + j] -= t;
                }
            }
            v.truncate(d);
        }
        v.resize(d, BigInt::zero());
        v
    }

    pub(crate) fn mul_raw(&self, a: &[BigInt], b: &[BigInt], r: u32) -> Vec<BigInt> {
        let d = self.0.degree;
        if d == 1 {
            let m = self.pow_p(r);
            return vec![(&a[0] * &b[0]).mod_floor(&m)];
        }
        let mut out = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                out[i + j] += x * y;
            }
        }
        let mut out = self.reduce_poly(out);
        self.reduce_mod_pr(&mut out, r);
        out
    }

    pub(crate) fn one_raw(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.0.degree];
        v[0] = BigInt::one();
        v
    }

    fn pow_raw(&self, a: &[BigInt], mut e: u64, r: u32) -> Vec<BigInt> {
        let mut result = self.one_raw();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_raw(&result, &base, r);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_raw(&base, &base, r);
            }
        }
        result
    }

    pub(crate) fn vp_big(&self, x: &BigInt, cap: u32) -> u32 {
        if x.is_zero() {
            return cap;
        }
        let p = self.p();
        let mut x = x.clone();
        let mut k = 0;
        while k < cap {
            let (q, r) = x.div_rem(&BigInt::from(p));
            if !r.is_zero() {
                break;
            }
            x = q;
            k += 1;
        }
        k
    }

    /// Minimum p-adic valuation of the coefficients, capped.
    pub(crate) fn vp_vec(&self, v: &[BigInt], cap: u32) -> u32 {
        v.iter().map(|c| self.vp_big(c, cap)).min().unwrap_or(cap)
    }

    fn binom_mod_p(&self) -> &Vec<Vec<u64>> {
        self.0.binom_mod_p.get_or_init(|| {
            let d = self.0.degree;
            let p = self.p();
            let mut rows = vec![vec![0u64; d]; d];
            for j in 0..d {
                rows[j][0] = 1;
                for i in 1..=j {
                    let above = if i < j { rows[j - 1][i] } else { 0 };
                    rows[j][i] = (rows[j - 1][i - 1] + above) % p;
                }
            }
            rows
        })
    }

    /// For an integral vector not divisible by p: the numerator j of its
    /// fractional valuation j/e.
    pub(crate) fn fractional_valuation_units(&self, u: &[BigInt]) -> u32 {
        let p = self.p();
        match self.0.basis {
            Basis::Trivial | Basis::Unramified => 0,
            Basis::Eisenstein => u.iter().position(|c| !(c % p).is_zero()).expect("normalized vector has a unit coefficient") as u32,
            Basis::Zeta { .. } => {
                let binom = self.binom_mod_p();
                let cm: Vec<u64> = u.iter().map(|c| (c.mod_floor(&BigInt::from(p))).to_u64().unwrap()).collect();
                for i in 0..self.0.degree {
                    let mut s: u64 = 0;
                    for (c, row) in cm.iter().zip(binom).skip(i) {
                        if *c != 0 && row[i] != 0 {
                            s = (s + c * row[i]) % p;
                        }
                    }
                    if s != 0 {
                        return i as u32;
                    }
                }
                unreachable!("normalized vector has a unit coordinate in the (zeta - 1) basis")
            }
        }
    }

    /// Residue of a normalized integral vector when it is a unit.
    fn unit_inverse_start(&self, u: &[BigInt]) -> Option<Vec<BigInt>> {
        let p = self.p();
        let pb = BigInt::from(p);
        let constant = |c: u64| -> Option<Vec<BigInt>> {
            let inv = fp::inv_mod(c, p)?;
            let mut v = vec![BigInt::zero(); self.0.degree];
            v[0] = BigInt::from(inv);
            Some(v)
        };
        match self.0.basis {
            Basis::Trivial => constant(u[0].mod_floor(&pb).to_u64().unwrap()),
            Basis::Eisenstein => constant(u[0].mod_floor(&pb).to_u64().unwrap()),
            Basis::Zeta { .. } => {
                let s = u.iter().fold(BigInt::zero(), |acc, c| acc + c).mod_floor(&pb);
                constant(s.to_u64().unwrap())
            }
            Basis::Unramified => {
                let a: Vec<u64> = u.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
                let mut a = a;
                fp::trim(&mut a);
                let inv = fp::inv_in_quotient(&a, &self.0.residue_modulus, p)?;
                let mut v = vec![BigInt::zero(); self.0.degree];
                for (i, c) in inv.into_iter().enumerate() {
                    v[i] = BigInt::from(c);
                }
                Some(v)
            }
        }
    }

    pub(crate) fn is_unit_raw(&self, u: &[BigInt]) -> bool {
        self.fractional_valuation_units(u) == 0
    }

    /// Inverse of a unit modulo p^r by Newton iteration.
    pub(crate) fn inverse_unit_raw(&self, u: &[BigInt], r: u32) -> Vec<BigInt> {
        let mut y = self.unit_inverse_start(u).expect("argument is a unit");
        let one = self.one_raw();
        for _ in 0..256 {
            let uy = self.mul_raw(u, &y, r);
            let mut err: Vec<BigInt> = one.iter().zip(&uy).map(|(a, b)| a - b).collect();
            self.reduce_mod_pr(&mut err, r);
            if err.iter().all(|c| c.is_zero()) {
                return y;
            }
            let mut corr = err;
            corr[0] += 1;
            y = self.mul_raw(&y, &corr, r);
        }
        panic!("Newton inversion failed to converge");
    }

    /// Inverse of a normalized integral vector U with valuation j/e, j > 0
    /// allowed: returns (W, s) with U^{-1} = p^s * W, W integral, correct
    /// modulo p^r.
    pub(crate) fn inverse_raw(&self, u: &[BigInt], r: u32) -> (Vec<BigInt>, i64) {
        let j = self.fractional_valuation_units(u);
        if j == 0 {
            return (self.inverse_unit_raw(u, r), 0);
        }
        // U^e = p^j W with W a unit, so U^{-1} = U^{e-1} W^{-1} p^{-j}.
        let e = self.0.e as u64;
        let work = r + 2 * j + 2;
        let ue = self.pow_raw(u, e, work);
        let pj = self.pow_p(j);
        let w: Vec<BigInt> = ue
            .iter()
            .map(|c| {
                debug_assert!((c % &*pj).is_zero());
                c / &*pj
            })
            .collect();
        let winv = self.inverse_unit_raw(&w, work - j);
        let num = self.mul_raw(&self.pow_raw(u, e - 1, work), &winv, work - j);
        // num = p^j U^{-1} has valuation j - j/e > j - 1.
        let pj1 = self.pow_p(j - 1);
        let mut out: Vec<BigInt> = num.iter().map(|c| c / &*pj1).collect();
        self.reduce_mod_pr(&mut out, r);
        (out, -1)
    }

    // ---- automorphisms ----

    /// zeta -> zeta^a on the zeta basis.
    pub(crate) fn zeta_power_raw(&self, u: &[BigInt], a: u64) -> Vec<BigInt> {
        let Basis::Zeta { order } = self.0.basis else { unreachable!("zeta action on a non-cyclotomic field") };
        let mut w = vec![BigInt::zero(); order];
        for (j, c) in u.iter().enumerate() {
            if !c.is_zero() {
                let k = ((j as u128 * a as u128) % order as u128) as usize;
                w[k] += c;
            }
        }
        self.reduce_poly(w)
    }

    fn frobenius_matrix(&self, r: u32) -> Arc<Vec<Vec<BigInt>>> {
        if let Some((have, m)) = self.0.frobenius.read().unwrap().as_ref() {
            if *have >= r {
                return m.clone();
            }
        }
        let work = r + 2;
        let d = self.0.degree;
        // beta = root of P congruent to X^p, by Newton from X^p.
        let mut x = vec![BigInt::zero(); d];
        x[1] = BigInt::one();
        let mut beta = self.pow_raw(&x, self.p(), work);
        let deriv: Vec<BigInt> = (1..=d).map(|i| &self.0.modulus[i] * BigInt::from(i)).collect();
        let eval = |coeffs: &[BigInt], at: &[BigInt]| -> Vec<BigInt> {
            let mut acc = vec![BigInt::zero(); d];
            for c in coeffs.iter().rev() {
                acc = self.mul_raw(&acc, at, work);
                acc[0] += c;
            }
            self.reduce_mod_pr(&mut acc, work);
            acc
        };
        for _ in 0..128 {
            let val = eval(&self.0.modulus, &beta);
            if val.iter().all(|c| c.is_zero()) {
                break;
            }
            let dval = eval(&deriv, &beta);
            let step = self.mul_raw(&val, &self.inverse_unit_raw(&dval, work), work);
            for (b, s) in beta.iter_mut().zip(step) {
                *b -= s;
            }
            self.reduce_mod_pr(&mut beta, work);
        }
        let mut rows = Vec::with_capacity(d);
        let mut pw = self.one_raw();
        for _ in 0..d {
            rows.push(pw.clone());
            pw = self.mul_raw(&pw, &beta, work);
        }
        let m = Arc::new(rows);
        *self.0.frobenius.write().unwrap() = Some((work, m.clone()));
        m
    }

    /// Arithmetic Frobenius on the power basis of an unramified field.
    pub(crate) fn frobenius_raw(&self, u: &[BigInt], r: u32) -> Vec<BigInt> {
        let m = self.frobenius_matrix(r);
        let d = self.0.degree;
        let mut out = vec![BigInt::zero(); d];
        for (i, c) in u.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, o) in out.iter_mut().enumerate() {
                *o += c * &m[i][k];
            }
        }
        self.reduce_mod_pr(&mut out, r);
        out
    }

    pub(crate) fn basis(&self) -> Basis {
        self.0.basis
    }
}

fn check_monic(poly: &[i64]) -> Result<()> {
    if poly.len() < 2 || *poly.last().unwrap() != 1 {
        return Err(Error::InvalidField(format!("defining polynomial {poly:?} must be monic of degree >= 1 (lowest coefficient first)")));
    }
    Ok(())
}
