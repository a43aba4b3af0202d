use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use senlab::padic::text::format_scalar;
use senlab::padic::{normalized_trace, pexp, plog, Field, GaloisElement, PadicScalar, Val, Valuation};
use senlab::sampling;
use senlab::Error;

fn fields() -> Vec<Field> {
    vec![
        Field::base(5, 20).unwrap(),
        Field::cyclotomic(5, 1, 20).unwrap(),
        Field::cyclotomic(5, 2, 12).unwrap(),
        Field::unramified(5, vec![2, 1, 1], 20).unwrap(),
    ]
}

#[test]
fn integer_product_digits() {
    let k = Field::base(5, 3).unwrap();
    let x = PadicScalar::from_int(&k, 2) * PadicScalar::from_int(&k, 3);
    assert_eq!(format_scalar(&x), "[1,1,0]@v0");
}

#[test]
fn geometric_series_inverse() {
    let k = Field::base(5, 20).unwrap();
    let x = PadicScalar::one(&k).try_div(&PadicScalar::from_int(&k, -4)).unwrap();
    let mut expect = BigInt::zero();
    for i in 0..20 {
        expect += num_traits::pow(BigInt::from(5), i);
    }
    assert_eq!(x.unit_coords(), &[expect]);
    assert_eq!(PadicScalar::one(&k).try_div(&PadicScalar::from_int(&k, 0)).unwrap_err(), Error::DivisionByZeroToPrecision);
}

#[test]
fn eisenstein_quotient_is_a_unit() {
    // Phi_5(1 + X) = X^4 + 5X^3 + 10X^2 + 10X + 5, so
    // (zeta - 1)^4 / 5 = -(pi^3 + 2 pi^2 + 2 pi + 1) with pi = zeta - 1.
    let k = Field::cyclotomic(5, 1, 20).unwrap();
    let pi = PadicScalar::uniformizer(&k);
    let q = pi.powu(4).try_div(&PadicScalar::from_int(&k, 5)).unwrap();
    assert_eq!(q.valuation(), Valuation::Finite(Val::from_integer(0)));
    let c = |n| PadicScalar::from_int(&k, n);
    let oracle = -(&pi.powu(3) + &(&c(2) * &pi.powu(2)) + &(&c(2) * &pi) + &c(1));
    assert!(q.agrees_to(&oracle, 18));
}

#[test]
fn basic_valuations() {
    let k = Field::base(5, 20).unwrap();
    assert_eq!(PadicScalar::from_int(&k, 25).valuation(), Valuation::Finite(Val::from_integer(2)));
    assert_eq!(PadicScalar::zero(&k).valuation(), Valuation::AtLeast(20));
    let kz = Field::cyclotomic(5, 1, 20).unwrap();
    assert_eq!(PadicScalar::uniformizer(&kz).valuation(), Valuation::Finite(Val::new(1, 4)));
}

#[test]
fn log_partial_sum_oracle() {
    // Terms 5^k/k have valuation k - v_5(k) >= 20 for k >= 22.
    let k = Field::base(5, 20).unwrap();
    let mut oracle = BigRational::zero();
    for j in 1..=30i64 {
        let t = BigRational::new(num_traits::pow(BigInt::from(5), j as usize), j.into());
        oracle = if j % 2 == 1 { oracle + t } else { oracle - t };
    }
    let got = plog(&PadicScalar::from_int(&k, 6)).unwrap();
    assert_eq!(got, PadicScalar::from_rational(&k, &oracle));
    assert!(plog(&PadicScalar::one(&k)).unwrap().is_zero());
    assert!(plog(&PadicScalar::from_int(&k, 5)).unwrap().is_zero());
    assert_eq!(plog(&PadicScalar::zero(&k)).unwrap_err(), Error::ZeroArgument);
}

#[test]
fn exp_examples() {
    let k = Field::base(5, 20).unwrap();
    assert_eq!(pexp(&PadicScalar::zero(&k)).unwrap(), PadicScalar::one(&k));
    let six = PadicScalar::from_int(&k, 6);
    assert!(pexp(&plog(&six).unwrap()).unwrap().agrees_to(&six, 18));
    let k2 = Field::base(2, 20).unwrap();
    assert!(matches!(pexp(&PadicScalar::from_int(&k2, 2)), Err(Error::ConvergenceViolation { .. })));
    assert!(matches!(pexp(&PadicScalar::from_int(&k, 1)), Err(Error::ConvergenceViolation { .. })));
}

#[test]
fn galois_examples() {
    let k = Field::cyclotomic(5, 1, 20).unwrap();
    let g = GaloisElement::cyclotomic(&k, 2).unwrap();
    let z = PadicScalar::primitive_element(&k).unwrap();
    assert_eq!(g.act(&z).unwrap(), z.powu(2));
    let q = PadicScalar::from_ratio(&k, 7, 3);
    assert_eq!(g.act(&q).unwrap(), q);
    let mut rng = sampling::rng(3);
    for _ in 0..20 {
        let x = sampling::scalar(&mut rng, &k, -1);
        let mut y = x.clone();
        for _ in 0..4 {
            y = g.act(&y).unwrap();
        }
        assert_eq!(y, x);
        assert_ne!(g.act(&x).unwrap(), x);
    }
}

#[test]
fn ultrametric_on_200_pairs_per_field() {
    for (i, k) in fields().iter().enumerate() {
        let mut rng = sampling::rng(100 + i as u64);
        for _ in 0..200 {
            let x = sampling::scalar_with_shift(&mut rng, k, -2, 3);
            let y = sampling::scalar_with_shift(&mut rng, k, -2, 3);
            let (vx, vy) = (x.val_lower(), y.val_lower());
            let s = &x + &y;
            assert!(s.val_lower() >= vx.min(vy));
            if vx != vy {
                assert_eq!(s.valuation(), Valuation::Finite(vx.min(vy)));
            }
            let prod = &x * &y;
            assert_eq!(prod.valuation(), Valuation::Finite(vx + vy));
        }
    }
}

#[test]
fn unramified_frobenius_is_a_ring_map() {
    let k = Field::unramified(5, vec![2, 1, 1], 20).unwrap();
    let g = GaloisElement::frobenius(&k, 1).unwrap();
    let mut rng = sampling::rng(9);
    for _ in 0..20 {
        let x = sampling::scalar(&mut rng, &k, 0);
        let y = sampling::scalar(&mut rng, &k, 0);
        assert_eq!(g.act(&(&x * &y)).unwrap(), &g.act(&x).unwrap() * &g.act(&y).unwrap());
        assert_eq!(g.act(&g.act(&x).unwrap()).unwrap(), x);
        let w = x.teichmuller().unwrap_or_else(|_| PadicScalar::one(&k));
        assert_eq!(g.act(&w).unwrap(), w.powu(5));
    }
}

#[test]
fn trace_examples() {
    let k2 = Field::cyclotomic(5, 2, 12).unwrap();
    let z = PadicScalar::primitive_element(&k2).unwrap();
    assert!(normalized_trace(&z, 1).unwrap().is_zero());
    let k1 = Field::cyclotomic(5, 1, 12).unwrap();
    let mut rng = sampling::rng(5);
    for _ in 0..10 {
        let x = sampling::scalar(&mut rng, &k1, -1).embed(&k2).unwrap();
        assert_eq!(normalized_trace(&x, 1).unwrap(), x);
    }
    assert_eq!(normalized_trace(&z, 3).unwrap_err(), Error::LevelMismatch { target: 3, level: 2 });
}

#[test]
fn trace_linearity_over_subfield() {
    // Oracle: average of the conjugates over K_1 computed with the Galois action.
    let k2 = Field::cyclotomic(5, 2, 12).unwrap();
    let k1 = Field::cyclotomic(5, 1, 12).unwrap();
    let mut rng = sampling::rng(11);
    let conj: Vec<GaloisElement> = (0..5).map(|t| GaloisElement::cyclotomic(&k2, 1 + 5 * t).unwrap()).collect();
    let fifth = PadicScalar::from_ratio(&k2, 1, 5);
    for _ in 0..50 {
        let x = sampling::scalar(&mut rng, &k2, 0);
        let y = sampling::scalar(&mut rng, &k2, 0);
        let a = sampling::scalar(&mut rng, &k1, 0).embed(&k2).unwrap();
        let b = sampling::scalar(&mut rng, &k1, 0).embed(&k2).unwrap();
        let lhs = normalized_trace(&(&(&a * &x) + &(&b * &y)), 1).unwrap();
        let rhs = &(&a * &normalized_trace(&x, 1).unwrap()) + &(&b * &normalized_trace(&y, 1).unwrap());
        assert!(lhs.agrees_to(&rhs, 10));
        let avg = conj.iter().fold(PadicScalar::zero(&k2), |acc, g| &acc + &g.act(&x).unwrap());
        assert!((&avg * &fifth).agrees_to(&normalized_trace(&x, 1).unwrap(), 10));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn log_is_a_homomorphism(seed in any::<u64>(), which in 0usize..4) {
        let k = &fields()[which];
        let mut rng = sampling::rng(seed);
        let x = sampling::scalar_with_shift(&mut rng, k, -1, 2);
        let y = sampling::scalar_with_shift(&mut rng, k, -1, 2);
        let lhs = plog(&(&x * &y)).unwrap();
        let rhs = &plog(&x).unwrap() + &plog(&y).unwrap();
        let n = k.precision();
        prop_assert!(lhs.agrees_to(&rhs, n - 2 - 2));
    }

    #[test]
    fn exp_inverts_log_on_principal_units(seed in any::<u64>(), which in 0usize..4) {
        let k = &fields()[which];
        let mut rng = sampling::rng(seed);
        let y = sampling::scalar(&mut rng, k, 1);
        let x = &PadicScalar::one(k) + &y;
        let back = pexp(&plog(&x).unwrap()).unwrap();
        prop_assert!(back.agrees_to(&x, k.precision() - 2));
    }

    #[test]
    fn galois_ring_hom_and_order(seed in any::<u64>(), a in 1i64..25) {
        prop_assume!(a % 5 != 0);
        let k = Field::cyclotomic(5, 2, 10).unwrap();
        let g = GaloisElement::cyclotomic(&k, a).unwrap();
        let mut rng = sampling::rng(seed);
        let x = sampling::scalar(&mut rng, &k, 0);
        let y = sampling::scalar(&mut rng, &k, 0);
        prop_assert_eq!(g.act(&(&x * &y)).unwrap(), &g.act(&x).unwrap() * &g.act(&y).unwrap());
        prop_assert_eq!(g.act(&(&x + &y)).unwrap(), &g.act(&x).unwrap() + &g.act(&y).unwrap());
        let ord = g.order();
        let mut expected = 1u64;
        let mut t = a.rem_euclid(25);
        while t != 1 { t = t * a % 25; expected += 1; }
        prop_assert_eq!(ord, expected);
        let z = PadicScalar::primitive_element(&k).unwrap();
        let mut w = z.clone();
        for i in 1..=ord {
            w = g.act(&w).unwrap();
            prop_assert_eq!(w == z, i == ord);
        }
    }

    #[test]
    fn traces_on_tower(seed in any::<u64>(), gexp in 1i64..125) {
        prop_assume!(gexp % 5 != 0);
        let k3 = Field::cyclotomic(5, 3, 8).unwrap();
        let mut rng = sampling::rng(seed);
        let x = sampling::scalar(&mut rng, &k3, 0);
        let g = GaloisElement::cyclotomic(&k3, gexp).unwrap();
        for n in 1..=3u32 {
            let rn = normalized_trace(&x, n).unwrap();
            prop_assert_eq!(normalized_trace(&rn, n).unwrap(), rn.clone());
            for m in n..=3u32 {
                let rm = normalized_trace(&x, m).unwrap();
                prop_assert_eq!(normalized_trace(&rm, n).unwrap(), rn.clone());
            }
            let lhs = normalized_trace(&g.act(&x).unwrap(), n).unwrap();
            prop_assert_eq!(lhs, g.act(&rn).unwrap());
        }
    }
}
