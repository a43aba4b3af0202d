use num_bigint::BigInt;
use num_rational::BigRational;
use senlab::lubin_tate::*;
use senlab::padic::{plog, Field, GaloisElement, PadicScalar, Val};
use senlab::sampling;
use senlab::series::text::parse_series;
use senlab::series::{MultiIndex, RadiusIndexedSeries};
use senlab::Error;

const D: u32 = 12;

fn q5() -> Field {
    Field::base(5, 20).unwrap()
}

fn multiplicative() -> LTFormalGroup {
    let k = q5();
    lt_build(&k, &PadicScalar::from_int(&k, 5), LiftKind::Multiplicative, None, D).unwrap()
}

fn standard() -> LTFormalGroup {
    let k = q5();
    lt_build(&k, &PadicScalar::from_int(&k, 5), LiftKind::Standard, None, D).unwrap()
}

fn q25() -> Field {
    Field::unramified_of_degree(5, 2, 20).unwrap()
}

fn unramified() -> LTFormalGroup {
    let k = q25();
    lt_build(&k, &PadicScalar::from_int(&k, 5), LiftKind::Standard, None, 8).unwrap()
}

/// Re-index a series into `total` variables, placing variable i at slot map[i].
fn lift_vars(f: &RadiusIndexedSeries, total: usize, map: &[usize]) -> RadiusIndexedSeries {
    let terms = f.terms().map(|(k, c)| {
        let mut e = vec![0u32; total];
        for (i, &slot) in map.iter().enumerate() {
            e[slot] += k.0[i];
        }
        (MultiIndex(e), c.clone())
    });
    RadiusIndexedSeries::from_terms(f.field(), total, f.radius(), f.degree(), terms).unwrap()
}

fn check_group_axioms(g: &LTFormalGroup, bound: i64) {
    let law = g.law();
    let k = g.field();
    let d = law.degree();
    // F = X + Y mod degree 2, F(X, 0) = X.
    assert_eq!(law.truncate(1), parse_series(k, 2, 1, 1, "T1 + T2").unwrap());
    for (idx, c) in law.terms() {
        if idx.0[1] == 0 && idx.0[0] > 1 {
            assert!(c.is_zero_mod(bound), "F(X,0) has a T1^{} term", idx.0[0]);
        }
    }
    for (idx, c) in law.terms() {
        let swapped = MultiIndex(vec![idx.0[1], idx.0[0]]);
        assert!(c.agrees_to(&law.coeff(&swapped), bound));
    }
    let x = RadiusIndexedSeries::variable(k, 3, 1, d, 0).unwrap();
    let z = RadiusIndexedSeries::variable(k, 3, 1, d, 2).unwrap();
    let fxy = lift_vars(&law, 3, &[0, 1]);
    let fyz = lift_vars(&law, 3, &[1, 2]);
    let left = law.compose(&[fxy, z]).unwrap();
    let right = law.compose(&[x, fyz]).unwrap();
    assert!(left.agrees_to(&right, bound));
    // f(F(X, Y)) = F(f(X), f(Y)).
    let f = g.lift();
    let x2 = RadiusIndexedSeries::variable(k, 2, 1, d, 0).unwrap();
    let y2 = RadiusIndexedSeries::variable(k, 2, 1, d, 1).unwrap();
    let lhs = f.compose(std::slice::from_ref(&law)).unwrap();
    let rhs = law.compose(&[f.compose(&[x2]).unwrap(), f.compose(&[y2]).unwrap()]).unwrap();
    assert!(lhs.agrees_to(&rhs, bound));
}

#[test]
fn multiplicative_law_is_xy() {
    let g = multiplicative();
    assert_eq!(g.law(), parse_series(g.field(), 2, 1, D, "T1 + T2 + T1 T2").unwrap());
}

#[test]
fn group_axioms_for_all_models() {
    check_group_axioms(&multiplicative(), 20);
    check_group_axioms(&standard(), 20);
    check_group_axioms(&unramified(), 20);
}

#[test]
fn build_rejects_bad_input() {
    let k = q5();
    let five = PadicScalar::from_int(&k, 5);
    assert!(matches!(lt_build(&k, &PadicScalar::from_int(&k, 25), LiftKind::Standard, None, D), Err(Error::NotAFrobeniusLift(_))));
    let bad = parse_series(&k, 1, 1, D, "5 * T1 + 2 * T1^5").unwrap();
    assert!(matches!(lt_build(&k, &five, LiftKind::Standard, Some(bad), D), Err(Error::NotAFrobeniusLift(_))));
    let bad = parse_series(&k, 1, 1, D, "5 * T1 + T1^2 + T1^5").unwrap();
    assert!(matches!(lt_build(&k, &five, LiftKind::Standard, Some(bad), D), Err(Error::NotAFrobeniusLift(_))));
    assert_eq!(lt_build(&k, &five, LiftKind::Standard, None, 1000).unwrap_err(), Error::DegreeOverflow(1000));
    let k1 = Field::cyclotomic(5, 1, 20).unwrap();
    assert_eq!(lt_build(&k1, &PadicScalar::from_int(&k1, 5), LiftKind::Standard, None, D).unwrap_err(), Error::UnsupportedField);
    // A custom lift in the same class: 5T + 5T^2 + T^5.
    let custom = parse_series(&k, 1, 1, D, "5 * T1 + 5 * T1^2 + T1^5").unwrap();
    let g = lt_build(&k, &five, LiftKind::Standard, Some(custom), D).unwrap();
    check_group_axioms(&g, 20);
}

#[test]
fn endomorphism_examples() {
    let g = multiplicative();
    let k = g.field().clone();
    assert_eq!(lt_endo(&g, &PadicScalar::one(&k)).unwrap().series, parse_series(&k, 1, 1, D, "T1").unwrap());
    assert_eq!(lt_endo(&g, &PadicScalar::from_int(&k, 3)).unwrap().series, parse_series(&k, 1, 1, D, "3 * T1 + 3 * T1^2 + T1^3").unwrap());
    for g in [multiplicative(), standard(), unramified()] {
        let pi = g.uniformizer().clone();
        assert_eq!(lt_endo(&g, &pi).unwrap().series, g.lift());
    }
    assert_eq!(lt_endo(&g, &PadicScalar::from_ratio(&k, 1, 5)).unwrap_err(), Error::NotIntegral);
}

#[test]
fn endomorphisms_form_a_ring_map() {
    // Oracle for the multiplicative model: [a](T) = (1 + T)^a - 1 with binomial coefficients.
    let g = multiplicative();
    let k = g.field().clone();
    let a = PadicScalar::from_ratio(&k, -2, 3);
    let ea = lt_endo(&g, &a).unwrap().series;
    let mut binom = BigRational::from_integer(1.into());
    let aq = BigRational::new(BigInt::from(-2), BigInt::from(3));
    for i in 1..=D {
        binom = binom * (aq.clone() - BigRational::from_integer((i - 1).into())) / BigRational::from_integer(i.into());
        assert!(ea.coeff1(i).agrees_to(&PadicScalar::from_rational(&k, &binom), 18));
    }
    for g in [standard(), unramified()] {
        let k = g.field().clone();
        let mut rng = sampling::rng(4);
        for _ in 0..3 {
            let a = sampling::scalar(&mut rng, &k, 0);
            let b = sampling::scalar(&mut rng, &k, 0);
            let ea = lt_endo(&g, &a).unwrap().series;
            let eb = lt_endo(&g, &b).unwrap().series;
            let eab = lt_endo(&g, &(&a * &b)).unwrap().series;
            let esum = lt_endo(&g, &(&a + &b)).unwrap().series;
            assert!(ea.compose(std::slice::from_ref(&eb)).unwrap().agrees_to(&eab, 18));
            assert!(g.law().compose(&[ea, eb]).unwrap().agrees_to(&esum, 18));
        }
    }
}

#[test]
fn logarithm_examples() {
    let g = multiplicative();
    let k = g.field().clone();
    let log = lt_log(&g).unwrap();
    for i in 1..=D {
        let sign = if i % 2 == 1 { 1 } else { -1 };
        assert_eq!(log.coeff1(i), PadicScalar::from_ratio(&k, sign, i as i64));
    }
    for g in [multiplicative(), standard(), unramified()] {
        let k = g.field().clone();
        let log = lt_log(&g).unwrap();
        assert_eq!(log.coeff1(1), PadicScalar::one(&k));
        // Denominators up to D cost at most v_p(D!) digits.
        let bound = 20 - 2;
        let x = RadiusIndexedSeries::variable(&k, 2, 1, g.degree(), 0).unwrap();
        let y = RadiusIndexedSeries::variable(&k, 2, 1, g.degree(), 1).unwrap();
        let lhs = log.compose(&[g.law()]).unwrap();
        let rhs = log.compose(&[x]).unwrap().add(&log.compose(&[y]).unwrap()).unwrap();
        assert!(lhs.agrees_to(&rhs, bound));
        for a in [PadicScalar::from_int(&k, 2), PadicScalar::from_int(&k, 3), g.uniformizer().clone()] {
            let ea = lt_endo(&g, &a).unwrap().series;
            assert!(log.compose(&[ea]).unwrap().agrees_to(&log.scale(&a), bound));
        }
    }
    let tiny = Field::base(5, 2).unwrap();
    let g = lt_build(&tiny, &PadicScalar::from_int(&tiny, 5), LiftKind::Standard, None, 4).unwrap();
    assert!(lt_log(&g).is_ok());
    let k2 = Field::base(2, 2).unwrap();
    let g = lt_build(&k2, &PadicScalar::from_int(&k2, 2), LiftKind::Multiplicative, None, 3).unwrap();
    let log = lt_log(&g).unwrap();
    assert_eq!(log.coeff1(2), PadicScalar::from_ratio(&k2, -1, 2));
}

#[test]
fn degree_and_precision_bounds() {
    // D < pN forces p^N > D, so the logarithm always has room for its denominators.
    let k = Field::base(2, 2).unwrap();
    assert_eq!(lt_build(&k, &PadicScalar::from_int(&k, 2), LiftKind::Standard, None, 4).unwrap_err(), Error::DegreeOverflow(4));
    let k = Field::base(3, 2).unwrap();
    let g = lt_build(&k, &PadicScalar::from_int(&k, 3), LiftKind::Standard, None, 5).unwrap();
    assert!(lt_log(&g).is_ok());
    let k = Field::base(5, 1).unwrap();
    assert!(matches!(lt_build(&k, &PadicScalar::from_int(&k, 5), LiftKind::Standard, None, 4), Err(Error::NotAFrobeniusLift(_))));
}

#[test]
fn torsion_slopes() {
    let slope = |a: i64, b: i64| Val::new(a, b);
    assert_eq!(lt_torsion_slopes(&standard(), 1).unwrap(), vec![Slope { slope: slope(1, 4), multiplicity: 4 }]);
    assert_eq!(lt_torsion_slopes(&multiplicative(), 2).unwrap(), vec![Slope { slope: slope(1, 20), multiplicity: 20 }]);
    let k2 = Field::base(2, 20).unwrap();
    let g2 = lt_build(&k2, &PadicScalar::from_int(&k2, 2), LiftKind::Multiplicative, None, D).unwrap();
    assert_eq!(lt_torsion_slopes(&g2, 1).unwrap(), vec![Slope { slope: slope(1, 1), multiplicity: 1 }]);
    for g in [standard(), multiplicative(), g2] {
        let q = g.q() as i64;
        for n in 1..=3u32 {
            let m = q.pow(n - 1) * (q - 1);
            assert_eq!(lt_torsion_slopes(&g, n).unwrap(), vec![Slope { slope: slope(1, m), multiplicity: m as u64 }]);
        }
    }
    let g = unramified();
    assert_eq!(lt_torsion_slopes(&g, 1).unwrap(), vec![Slope { slope: slope(1, 24), multiplicity: 24 }]);
    assert!(matches!(lt_torsion_slopes(&standard(), 6), Err(Error::DegreeTooSmallForLevel { level: 6, .. })));
}

#[test]
fn character_action() {
    let g = multiplicative();
    let k1 = Field::cyclotomic(5, 1, 20).unwrap();
    let zeta = PadicScalar::primitive_element(&k1).unwrap();
    let t = &zeta - &PadicScalar::one(&k1);
    assert_eq!(lt_char_act(&g, &PadicScalar::one(g.field()), &t).unwrap(), t);
    let got = lt_char_act(&g, &PadicScalar::from_int(g.field(), 2), &t).unwrap();
    let sigma = GaloisElement::cyclotomic(&k1, 2).unwrap();
    assert_eq!(got, &sigma.act(&zeta).unwrap() - &PadicScalar::one(&k1));
    assert_eq!(lt_char_act(&g, &PadicScalar::from_int(g.field(), 5), &t).unwrap_err(), Error::NotAUnit);

    let g = standard();
    let k = g.field().clone();
    let mut rng = sampling::rng(21);
    for _ in 0..20 {
        let a = sampling::unit(&mut rng, &k);
        let b = sampling::unit(&mut rng, &k);
        let t = sampling::scalar_with_shift(&mut rng, &k1, 1, 2);
        let lhs = lt_char_act(&g, &b, &lt_char_act(&g, &a, &t).unwrap()).unwrap();
        let rhs = lt_char_act(&g, &(&a * &b), &t).unwrap();
        assert!(lhs.agrees_to(&rhs, 18));
    }
}

#[test]
fn embedding_chart_examples() {
    let k = q5();
    let e = EmbeddingSet::new(&k).unwrap();
    assert_eq!(e.len(), 1);
    assert!(embedding_chart(&e, &PadicScalar::one(&k), 1).unwrap()[0].is_zero());
    let g = PadicScalar::from_int(&k, 6);
    assert_eq!(embedding_chart(&e, &g, 1).unwrap(), vec![plog(&g).unwrap()]);
    assert_eq!(embedding_chart(&e, &PadicScalar::from_int(&k, 2), 1).unwrap_err(), Error::NotPrincipalUnit(1));

    let k2 = q25();
    let e2 = EmbeddingSet::new(&k2).unwrap();
    assert_eq!(e2.len(), 2);
    assert_eq!(e2.compose(1, 1), 0);
    let alpha = PadicScalar::primitive_element(&k2).unwrap();
    let w = alpha.teichmuller().unwrap();
    let five = PadicScalar::from_int(&k2, 5);
    let g = &PadicScalar::one(&k2) + &(&five * &w);
    let chart = embedding_chart(&e2, &g, 1).unwrap();
    assert_eq!(chart[0], plog(&g).unwrap());
    let frob_g = &PadicScalar::one(&k2) + &(&five * &w.powu(5));
    assert_eq!(chart[1], plog(&frob_g).unwrap());
    assert!(EmbeddingSet::new(&Field::cyclotomic(5, 1, 10).unwrap()).is_err());
}

#[test]
fn f_analyticity_bridge() {
    let k2 = q25();
    let e = EmbeddingSet::new(&k2).unwrap();
    let id = coordinate_orbit(&e, 0, 1, 4).unwrap();
    let frob = coordinate_orbit(&e, 1, 1, 4).unwrap();
    assert!(id.is_f_analytic(1, 18).unwrap());
    assert!(!frob.is_f_analytic(1, 18).unwrap());
    let mut rng = sampling::rng(8);
    let g = &PadicScalar::one(&k2) + &sampling::scalar(&mut rng, &k2, 1);
    let chart = embedding_chart(&e, &g, 1).unwrap();
    let moved = frob.evaluate(&chart).unwrap();
    assert_eq!(moved[1], chart[1]);
    assert_eq!(moved[0], PadicScalar::one(&k2));
}

#[test]
fn model_file_round_trip() {
    let spec = LTModelSpec::parse(r#"{"p":5,"F":"Qp","pi":"5","lift":"multiplicative","D":12}"#).unwrap();
    let g = spec.build(20, 8).unwrap();
    assert_eq!(g.degree(), 12);
    assert_eq!(g.law(), multiplicative().law());
    let spec = LTModelSpec::parse(r#"{"p":5,"F":"Qq","f":2}"#).unwrap();
    let g = spec.build(20, 6).unwrap();
    assert_eq!(g.q(), 25);
    assert!(LTModelSpec::parse(r#"{"p":5,"lift":"other"}"#).is_err());
}
