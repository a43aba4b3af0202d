use num_traits::One;

use super::scalar::PadicScalar;
use super::valuation::Val;
use crate::error::{Error, Result};

fn ilog(p: u64, k: u64) -> i64 {
    let mut n = 0;
    let mut x = k;
    while x >= p {
        x /= p;
        n += 1;
    }
    n
}

fn v_p_u64(p: u64, mut k: u64) -> i64 {
    let mut n = 0;
    while k > 0 && k.is_multiple_of(p) {
        k /= p;
        n += 1;
    }
    n
}

/// Run `f(work)` with increasing internal precision until its output is
/// known to at least `target`, then truncate.
fn with_guard<F>(target: i64, initial_guard: i64, f: F) -> Result<PadicScalar>
where
    F: Fn(i64) -> Result<PadicScalar>,
{
    let mut guard = initial_guard.max(2);
    for _ in 0..16 {
        let r = f(target + guard)?;
        if r.precision() >= target {
            return Ok(r.truncate(target));
        }
        guard += target - r.precision() + 2;
    }
    unreachable!("guard digits grow until the target precision is met")
}

/// Sum of (-1)^{k+1} z^k / k at internal precision `work`, for v(z) > 1/(p-1).
fn mercator(z: &PadicScalar, work: i64) -> PadicScalar {
    let field = z.field();
    let p = field.p();
    let mut sum = PadicScalar::zero_with_prec(field, work);
    if z.is_zero() {
        return sum;
    }
    let c = z.valuation().finite().unwrap();
    let mono = (Val::one() / c).ceil().to_integer().max(1) as u64 + 1;
    let mut pw = z.clone();
    let mut k: u64 = 1;
    loop {
        let inv_k = PadicScalar::from_rational_with_prec(field, &num_rational::BigRational::new(1.into(), (k as i64).into()), work + 2);
        let term = &pw * &inv_k;
        sum = if k % 2 == 1 { &sum + &term } else { &sum - &term };
        let kk = k + 1;
        let bound = c * Val::from_integer(kk as i64) - Val::from_integer(ilog(p, kk));
        if kk >= mono && bound >= Val::from_integer(work) {
            return sum;
        }
        pw = &pw * z;
        k = kk;
    }
}

/// Iwasawa p-adic logarithm (log p = 0).
pub fn plog(x: &PadicScalar) -> Result<PadicScalar> {
    if x.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let field = x.field().clone();
    let p = field.p();
    let e = field.ramification_index() as u64;
    let q = field.residue_cardinality();
    let v = x.valuation().finite().unwrap();
    let target = (Val::from_integer(x.precision()) - v).floor().to_integer();
    let u0 = x.mul_p_pow(-x.p_shift());
    let j = ((v - Val::from_integer(x.p_shift())) * Val::from_integer(e as i64)).to_integer();
    let initial_guard = 4 + v_p_u64(p, e) + ilog(p, e) + ilog(p, q);
    with_guard(target, initial_guard, |work| {
        let mut u = u0.lift_precision(work);
        let mut divisor: u64 = 1;
        if j != 0 {
            // u^e = p^j W, W a unit; log u = log W / e.
            u = u.powu(e).mul_p_pow(-j);
            divisor *= e;
        }
        let y = u.powu(q - 1);
        divisor *= q - 1;
        let one = PadicScalar::one(&field).lift_precision(work + 2);
        let mut y = y;
        let mut z = &y - &one;
        let threshold = Val::from_integer(if p == 2 { 2 } else { 1 });
        let mut t = 0i64;
        while !z.is_zero() && z.valuation().finite().unwrap() < threshold {
            y = y.powu(p);
            z = &y - &one;
            t += 1;
        }
        let s = mercator(&z, work);
        let d = PadicScalar::from_rational_with_prec(&field, &num_rational::BigRational::new(1.into(), (divisor as i64).into()), work + 2);
        Ok((&s * &d).mul_p_pow(-t))
    })
}

/// Exponential series, for v(x) > 1/(p-1).
pub fn pexp(x: &PadicScalar) -> Result<PadicScalar> {
    let field = x.field().clone();
    let p = field.p();
    let bound = Val::new(1, p as i64 - 1);
    let v = x.val_lower();
    if v <= bound {
        return Err(Error::ConvergenceViolation { got: x.valuation().to_string(), bound: bound.to_string() });
    }
    let target = x.precision();
    if x.is_zero() {
        return Ok(PadicScalar::one(&field).truncate(target).lift_precision(target));
    }
    // v(x^k / k!) >= k v - (k - 1)/(p - 1)
    let gap = v - bound;
    let initial_guard = 4 + (Val::from_integer(target) / gap / Val::from_integer(p as i64 - 1)).ceil().to_integer().min(64);
    with_guard(target, initial_guard, |work| {
        let xl = x.lift_precision(work);
        let mut sum = PadicScalar::one(&field).lift_precision(work);
        let mut term = sum.clone();
        let mut k: i64 = 1;
        loop {
            let inv_k = PadicScalar::from_rational_with_prec(&field, &num_rational::BigRational::new(1.into(), k.into()), work + 2);
            term = &(&term * &xl) * &inv_k;
            sum = &sum + &term;
            let next = v * Val::from_integer(k + 1) - bound * Val::from_integer(k);
            if next >= Val::from_integer(work) {
                return Ok(sum);
            }
            k += 1;
        }
    })
}
