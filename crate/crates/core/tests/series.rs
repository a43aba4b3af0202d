use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use senlab::padic::{Field, PadicScalar, Val, Valuation};
use senlab::sampling;
use senlab::series::text::parse_series;
use senlab::series::{MultiIndex, RadiusIndexedSeries};
use senlab::Error;

fn q5(n: i64) -> Field {
    Field::base(5, n).unwrap()
}

fn s1(k: &Field, n: u32, d: u32, text: &str) -> RadiusIndexedSeries {
    parse_series(k, 1, n, d, text).unwrap()
}

fn int(k: &Field, x: i64) -> PadicScalar {
    PadicScalar::from_int(k, x)
}

#[test]
fn product_of_conjugate_linears() {
    let k = q5(20);
    let f = s1(&k, 1, 12, "1 + T1");
    let g = s1(&k, 1, 12, "1 + -1 * T1");
    assert_eq!(f.mul(&g).unwrap(), s1(&k, 1, 12, "1 + -1 * T1^2"));
}

#[test]
fn unit_factor_keeps_norm() {
    let k = q5(20);
    let f = RadiusIndexedSeries::univariate(&k, 1, 12, &(0..=12).map(|i| int(&k, 5i64.pow(i))).collect::<Vec<_>>()).unwrap();
    let g = RadiusIndexedSeries::one(&k, 1, 1, 12).unwrap();
    assert_eq!(f.mul(&g).unwrap().norm(), f.norm());
}

#[test]
fn norm_examples() {
    let k = q5(20);
    let f = s1(&k, 1, 12, "1/5 * T1");
    let n1 = f.gauss_norm(1).unwrap();
    assert_eq!(n1.value, Valuation::Finite(Val::from_integer(0)));
    assert_eq!(n1.attained_at, MultiIndex(vec![1]));
    assert_eq!(f.gauss_norm(2).unwrap().value, Valuation::Finite(Val::from_integer(1)));

    let g = s1(&k, 1, 12, "T1 + T1^3");
    for m in 1..=3 {
        let norm = g.gauss_norm(m).unwrap();
        assert_eq!(norm.value, Valuation::Finite(Val::from_integer(m as i64)));
        assert_eq!(norm.attained_at, MultiIndex(vec![1]));
    }
    let c = s1(&k, 1, 12, "7/25");
    for m in 1..=4 {
        assert_eq!(c.gauss_norm(m).unwrap().value, Valuation::Finite(Val::from_integer(-2)));
    }
    let f2 = f.with_radius(2);
    assert_eq!(f2.gauss_norm(1).unwrap_err(), Error::RadiusTooSmall { requested: 1, radius: 2 });
}

#[test]
fn square_shift() {
    let k = q5(20);
    let f = s1(&k, 1, 12, "T1^2");
    let got = f.substitute(&[int(&k, 5)]).unwrap();
    assert_eq!(got, s1(&k, 1, 12, "T1^2 + 10 * T1 + 25"));
    assert_eq!(f.substitute(&[PadicScalar::zero(&k)]).unwrap(), f);
    assert!(matches!(f.substitute(&[int(&k, 2)]), Err(Error::ShiftTooLarge { .. })));
}

#[test]
fn geometric_inverse() {
    let k = q5(20);
    let f = s1(&k, 1, 12, "1 + -5 * T1");
    let expect = RadiusIndexedSeries::univariate(&k, 1, 12, &(0..=12).map(|i| int(&k, 5i64.pow(i))).collect::<Vec<_>>()).unwrap();
    assert_eq!(f.invert().unwrap(), expect);
    let c = s1(&k, 1, 12, "3");
    assert_eq!(c.invert().unwrap(), s1(&k, 1, 12, "1/3"));
    assert_eq!(s1(&k, 1, 12, "T1").invert().unwrap_err(), Error::NonUnitConstantTerm);
    assert_eq!(s1(&k, 1, 12, "1 + 1/5 * T1").invert().unwrap_err(), Error::DominanceViolation);
}

#[test]
fn derivative_of_monomial() {
    let k = q5(20);
    let f = parse_series(&k, 2, 1, 12, "T1^2 T2").unwrap();
    assert_eq!(f.derive(1).unwrap(), parse_series(&k, 2, 1, 11, "2 * T1 T2").unwrap());
    assert_eq!(f.derive(3).unwrap_err(), Error::BadDirection { direction: 3, dim: 2 });
    assert!(f.derive(0).is_err());
}

#[test]
fn evaluate_geometric_at_p() {
    let k = q5(10);
    let f = s1(&k, 1, 12, "1 + -5 * T1").invert().unwrap();
    let got = f.evaluate(&[int(&k, 5)]).unwrap();
    let expect = PadicScalar::from_rational(&k, &BigRational::new(BigInt::from(1), BigInt::from(-24)));
    assert!(got.agrees_to(&expect, 10));
    assert_eq!(f.evaluate(&[PadicScalar::zero(&k)]).unwrap(), f.constant_term());
    assert!(matches!(f.evaluate(&[int(&k, 1)]), Err(Error::PointOutsideRadius { .. })));
}

#[test]
fn degree_cap() {
    let k = q5(2);
    assert_eq!(RadiusIndexedSeries::zero(&k, 1, 1, 10).unwrap_err(), Error::DegreeTooLarge { degree: 10, precision: 2 });
    assert!(RadiusIndexedSeries::zero(&k, 1, 1, 9).is_ok());
}

#[test]
fn shapes_must_match() {
    let k = q5(20);
    let f = s1(&k, 1, 12, "T1");
    let g = parse_series(&k, 2, 1, 12, "T1").unwrap();
    assert!(matches!(f.add(&g), Err(Error::ShapeMismatch(_))));
    assert!(matches!(f.mul(&f.with_radius(2)), Err(Error::ShapeMismatch(_))));
}

#[test]
fn compose_matches_direct_expansion() {
    // (X + Y)^2 with X = T1 + T1^2, Y = T1: oracle (2T + T^2)^2 = 4T^2 + 4T^3 + T^4
    let k = q5(20);
    let f = parse_series(&k, 2, 1, 12, "T1^2 + 2 * T1 T2 + T2^2").unwrap();
    let x = s1(&k, 1, 12, "T1 + T1^2");
    let y = s1(&k, 1, 12, "T1");
    assert_eq!(f.compose(&[x, y]).unwrap(), s1(&k, 1, 12, "4 * T1^2 + 4 * T1^3 + T1^4"));
}

fn ext_fields() -> Vec<Field> {
    vec![q5(20), Field::cyclotomic(5, 1, 20).unwrap()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn norm_laws(seed in any::<u64>(), d in 1usize..=2, n in 1u32..=2, which in 0usize..2) {
        let k = &ext_fields()[which];
        let mut rng = sampling::rng(seed);
        let f = sampling::series(&mut rng, k, d, n, 6, 0.5, 0);
        let g = sampling::series(&mut rng, k, d, n, 6, 0.5, 0);
        let (nf, ng) = (f.norm().value.lower_bound(), g.norm().value.lower_bound());
        let fg = f.mul(&g).unwrap();
        prop_assert!(fg.norm().value.lower_bound() >= nf + ng || fg.is_zero());
        let s = f.add(&g).unwrap();
        prop_assert!(s.norm().value.lower_bound() >= nf.min(ng) || s.is_zero());
        for m in n..n + 3 {
            prop_assert!(f.gauss_norm(m + 1).unwrap().value.lower_bound() >= f.gauss_norm(m).unwrap().value.lower_bound());
        }
    }

    #[test]
    fn inverse_is_two_sided(seed in any::<u64>(), d in 1usize..=2, n in 1u32..=2) {
        let k = q5(20);
        let mut rng = sampling::rng(seed);
        let f = sampling::invertible_series(&mut rng, &k, d, n, 8);
        let inv = f.invert().unwrap();
        let one = RadiusIndexedSeries::one(&k, d, n, 8).unwrap();
        prop_assert!(f.mul(&inv).unwrap().agrees_to(&one, 18));
        prop_assert!(inv.mul(&f).unwrap().agrees_to(&one, 18));
    }

    #[test]
    fn substitution_is_additive(seed in any::<u64>(), d in 1usize..=2) {
        let k = q5(20);
        let mut rng = sampling::rng(seed);
        let f = sampling::series(&mut rng, &k, d, 1, 8, 0.6, 0);
        let c: Vec<_> = (0..d).map(|_| sampling::scalar(&mut rng, &k, 1)).collect();
        let c2: Vec<_> = (0..d).map(|_| sampling::scalar(&mut rng, &k, 1)).collect();
        let both: Vec<_> = c.iter().zip(&c2).map(|(a, b)| a + b).collect();
        let twice = f.substitute(&c).unwrap().substitute(&c2).unwrap();
        prop_assert!(twice.agrees_to(&f.substitute(&both).unwrap(), 18));
        let x: Vec<_> = (0..d).map(|_| sampling::scalar(&mut rng, &k, 1)).collect();
        let lhs = f.substitute(&c).unwrap().evaluate(&x).unwrap();
        let xc: Vec<_> = x.iter().zip(&c).map(|(a, b)| a + b).collect();
        // Truncated series: both sides agree up to the first omitted degree.
        prop_assert!(lhs.agrees_to(&f.evaluate(&xc).unwrap(), 9));
    }

    #[test]
    fn mixed_partials_commute(seed in any::<u64>()) {
        let k = q5(20);
        let mut rng = sampling::rng(seed);
        let f = sampling::series(&mut rng, &k, 2, 1, 8, 0.7, 0);
        let a = f.derive(1).unwrap().derive(2).unwrap();
        let b = f.derive(2).unwrap().derive(1).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn derivative_norm_bound(seed in any::<u64>(), n in 1u32..=3) {
        // v(k a_k) + n(|k| - 1) >= v(a_k) + n|k| - n, so the observed
        // constant never exceeds 1.
        let k = q5(20);
        let mut rng = sampling::rng(seed);
        let f = sampling::series(&mut rng, &k, 2, n, 8, 0.7, 0);
        for j in 1..=2 {
            let df = f.derive(j).unwrap();
            if df.is_zero() { continue; }
            let loss = f.norm().value.lower_bound() - df.norm().value.lower_bound();
            prop_assert!(loss <= Val::from_integer(n as i64));
        }
    }
}

#[test]
fn monomial_leibniz() {
    let k = q5(20);
    for a in 0..=3u32 {
        for b in 0..=3u32 {
            let f = RadiusIndexedSeries::from_terms(&k, 2, 1, 12, [(MultiIndex(vec![a, 0]), int(&k, 1))]).unwrap();
            let g = RadiusIndexedSeries::from_terms(&k, 2, 1, 12, [(MultiIndex(vec![b, 1]), int(&k, 1))]).unwrap();
            let lhs = f.mul(&g).unwrap().derive(1).unwrap();
            let rhs = f.derive(1).unwrap().mul(&g.truncate(11)).unwrap().add(&f.truncate(11).mul(&g.derive(1).unwrap()).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
