//! Seeded random generators for property suites and examples.

use num_bigint::{BigInt, RandBigInt};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::padic::{Field, PadicScalar};
use crate::series::{MultiIndex, RadiusIndexedSeries};

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derive an independent stream for a sub-case, so that parallel cases draw
/// the same numbers regardless of scheduling.
pub fn sub_rng(seed: u64, stream: u64) -> SuiteRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Uniform integral element p^v * u with v >= min_shift, u integral in the
/// internal basis, at the field precision.
pub fn scalar(rng: &mut SuiteRng, field: &Field, min_shift: i64) -> PadicScalar {
    let prec = field.precision();
    let r = (prec - min_shift).max(1) as u32;
    let m = field.pow_p(r).into_owned();
    let coords: Vec<BigInt> = (0..field.degree()).map(|_| rng.gen_bigint_range(&BigInt::from(0), &m)).collect();
    PadicScalar::from_integral_coords(field, coords, min_shift, prec).expect("right length")
}

/// Random element with valuation in [lo, hi] (integral exponents), never zero.
pub fn scalar_with_shift(rng: &mut SuiteRng, field: &Field, lo: i64, hi: i64) -> PadicScalar {
    let s = rng.gen_range(lo..=hi);
    let u = unit(rng, field);
    u.mul_p_pow(s)
}

/// Random unit of the ring of integers.
pub fn unit(rng: &mut SuiteRng, field: &Field) -> PadicScalar {
    loop {
        let x = scalar(rng, field, 0);
        if x.is_unit() {
            return x;
        }
    }
}

/// Random integer in Z_p^x as an element of `field`.
pub fn int_unit(rng: &mut SuiteRng, field: &Field, bound: i64) -> PadicScalar {
    let p = field.p() as i64;
    loop {
        let a = rng.gen_range(-bound..=bound);
        if a % p != 0 {
            return PadicScalar::from_int(field, a);
        }
    }
}

/// Element of Q_p (as an element of `field`) with valuation at least `min_shift`.
pub fn base_scalar(rng: &mut SuiteRng, field: &Field, min_shift: i64) -> PadicScalar {
    let base = field.base_field();
    scalar(rng, &base, min_shift).embed(field).expect("base embeds")
}

/// Random series in `d` variables whose coefficients a_k have
/// v(a_k) >= floor_shift - n|k| + slack. About `density` of the indices are filled.
pub fn series(rng: &mut SuiteRng, field: &Field, d: usize, n: u32, degree: u32, density: f64, floor_shift: i64) -> RadiusIndexedSeries {
    let mut terms = Vec::new();
    for k in MultiIndex::all_up_to(d, degree) {
        if !rng.gen_bool(density) {
            continue;
        }
        let slack = rng.gen_range(0..=3);
        let shift = floor_shift - (n as i64) * k.degree() as i64 + slack;
        terms.push((k, scalar(rng, field, shift)));
    }
    RadiusIndexedSeries::from_terms(field, d, n, degree, terms).expect("valid shape")
}

/// A series f with unit constant term and v(a_k) + n|k| >= 1 for k != 0,
/// so that `invert` applies.
pub fn invertible_series(rng: &mut SuiteRng, field: &Field, d: usize, n: u32, degree: u32) -> RadiusIndexedSeries {
    let mut f = series(rng, field, d, n, degree, 0.6, 1);
    let zero = MultiIndex::zero(d);
    let a0 = unit(rng, field);
    f = f.sub(&RadiusIndexedSeries::constant(field, d, n, degree, &f.coeff(&zero)).unwrap()).unwrap();
    f.add(&RadiusIndexedSeries::constant(field, d, n, degree, &a0).unwrap()).unwrap()
}
