use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use senlab::linalg::Matrix;
use senlab::padic::{Field, PadicScalar};
use senlab::sampling;
use senlab::sl2::*;
use senlab::Error;

fn q5() -> Field {
    Field::base(5, 20).unwrap()
}

fn ints(k: &Field, rows: &[&[i64]]) -> Matrix {
    Matrix::from_ints(k, rows)
}

#[test]
fn symk_examples() {
    let k = q5();
    let s1 = symk_matrices(&k, 1);
    assert_eq!(s1.ops.d1, ints(&k, &[&[0, 0], &[1, 0]]));
    assert_eq!(s1.ops.d2, ints(&k, &[&[0, 1], &[0, 0]]));
    assert_eq!(s1.ops.h, ints(&k, &[&[-1, 0], &[0, 1]]));
    let s0 = symk_matrices(&k, 0);
    assert!(s0.ops.d1.is_exactly_zero() && s0.ops.d2.is_exactly_zero() && s0.ops.h.is_exactly_zero());
    assert_eq!(symk_matrices(&k, 2).ops.h, ints(&k, &[&[-2, 0, 0], &[0, 0, 0], &[0, 0, 2]]));
}

#[test]
fn symk_relations_and_spectra() {
    let k = q5();
    for n in 0..=8u32 {
        let s = symk_matrices(&k, n);
        assert!(s.ops.d1.commutator(&s.ops.d2).unwrap().sub(&s.ops.h).unwrap().is_exactly_zero());
        s.ops.check_relations(20).unwrap();
        let want: Vec<i64> = (0..=n as i64).map(|i| 2 * i - n as i64).collect();
        assert_eq!(weight_spectrum(&s.ops.h).unwrap(), want);
    }
    assert_eq!(weight_spectrum(&symk_matrices(&k, 3).ops.h).unwrap(), vec![-3, -1, 1, 3]);
    let sum = Sl2Triple::direct_sum(&[symk_matrices(&k, 2).ops, symk_matrices(&k, 0).ops]);
    assert_eq!(weight_spectrum(&sum.h).unwrap(), vec![-2, 0, 0, 2]);
    let s = PadicScalar::from_int(&k, 3);
    let scaled = scaled_spectrum(&symk_matrices(&k, 2).ops.h, &s).unwrap();
    assert_eq!(scaled, vec![PadicScalar::from_int(&k, -6), PadicScalar::zero(&k), PadicScalar::from_int(&k, 6)]);
}

#[test]
fn spectrum_of_non_diagonal_and_non_integral_matrices() {
    let k = q5();
    // Upper triangular: eigenvalues are the diagonal.
    assert_eq!(weight_spectrum(&ints(&k, &[&[4, 7, 1], &[0, -3, 2], &[0, 0, 4]])).unwrap(), vec![-3, 4, 4]);
    assert_eq!(weight_spectrum(&ints(&k, &[&[0, 1], &[2, 0]])).unwrap_err(), Error::NonIntegralSpectrum);
    let half = Matrix::from_rows(vec![
        vec![PadicScalar::from_ratio(&k, 1, 2), PadicScalar::zero(&k)],
        vec![PadicScalar::zero(&k), PadicScalar::from_ratio(&k, -1, 2)],
    ])
    .unwrap();
    assert_eq!(weight_spectrum(&half).unwrap_err(), Error::NonIntegralSpectrum);
    // det(x - A) for A = (1 2; 3 4) is x^2 - 5x - 2.
    let chi = characteristic_polynomial(&ints(&k, &[&[1, 2], &[3, 4]])).unwrap();
    assert_eq!(chi, vec![PadicScalar::from_int(&k, -2), PadicScalar::from_int(&k, -5), PadicScalar::one(&k)]);
}

#[test]
fn group_matrices() {
    let k = q5();
    let u = SL2Element::from_ints(&k, 1, 1, 0, 1).unwrap();
    // x1 -> x1, y -> x1 + y, x2 -> x1 + 2y + x2 in the basis (x1, y, x2).
    assert_eq!(symk_matrices(&k, 2).group_matrix(&u), ints(&k, &[&[1, 1, 1], &[0, 1, 2], &[0, 0, 1]]));
    assert_eq!(SL2Element::from_ints(&k, 2, 0, 0, 1).unwrap_err(), Error::NotDetOne);
    let mut rng = sampling::rng(5);
    for n in 0..=5 {
        let s = symk_matrices(&k, n);
        let g = SL2Element::random(&mut rng, &k);
        let h = SL2Element::random(&mut rng, &k);
        let lhs = s.group_matrix(&g.mul(&h).unwrap());
        let rhs = s.group_matrix(&g).mul(&s.group_matrix(&h)).unwrap();
        assert!(lhs.agrees_to(&rhs, 20));
        assert_eq!(s.group_matrix(&SL2Element::identity(&k)), Matrix::identity(&k, n as usize + 1));
        // exp(t D) = Sym^k(exp(t D)) for nilpotent D, t = 5.
        let t = PadicScalar::from_int(&k, 5);
        let e1 = SL2Element::new(Matrix::identity(&k, 2).add(&symk_matrices(&k, 1).ops.d1.scale(&t)).unwrap()).unwrap();
        let e2 = SL2Element::new(Matrix::identity(&k, 2).add(&symk_matrices(&k, 1).ops.d2.scale(&t)).unwrap()).unwrap();
        assert_eq!(s.ops.d1.scale(&t).exp().unwrap(), s.group_matrix(&e1));
        assert_eq!(s.ops.d2.scale(&t).exp().unwrap(), s.group_matrix(&e2));
    }
}

#[test]
fn quadratic_invariant() {
    let k = q5();
    assert!(quad_invariant_check(&Matrix::identity(&k, 2)).unwrap());
    assert!(quad_invariant_check(&ints(&k, &[&[1, 1], &[0, 1]])).unwrap());
    let mut rng = sampling::rng(50);
    for _ in 0..50 {
        let g = SL2Element::random(&mut rng, &k);
        assert!(quad_invariant_check(g.matrix()).unwrap());
    }
    let d = ints(&k, &[&[2, 0], &[0, 1]]);
    assert_eq!(quad_invariant_check(&d).unwrap_err(), Error::NotDetOne);
    let q = transform_quadratic(&d).unwrap();
    assert_eq!(q[1][1], PadicScalar::from_int(&k, 4));
    assert_eq!(q[0][2], PadicScalar::from_int(&k, -4));
}

#[test]
fn sqrt_series_examples() {
    let k = q5();
    let s = sqrt_series(&k, 30).unwrap();
    let want = [(1, 1), (1, 2), (-1, 8), (1, 16), (-5, 128)];
    for (c, (a, b)) in s.iter().zip(want) {
        assert_eq!(*c, PadicScalar::from_ratio(&k, a, b));
    }
    for c in &s {
        assert!(c.is_integral());
    }
    let r = sqrt_series_rationals(30);
    for m in 0..30 {
        let sq: BigRational = (0..=m).map(|i| &r[i] * &r[m - i]).sum();
        let want = if m <= 1 { 1 } else { 0 };
        assert_eq!(sq, BigRational::from_integer(BigInt::from(want)));
    }
    assert_eq!(s[0], PadicScalar::one(&k));
    assert_eq!(sqrt_series(&Field::base(2, 10).unwrap(), 4).unwrap_err(), Error::EvenPrimeUnsupported);
}

#[test]
fn coordinate_algebra_derivations() {
    let k = q5();
    let alg = CoordinateAlgebra::new(&k, &PadicScalar::one(&k)).unwrap();
    let two_y = alg.scale(&alg.y(), &PadicScalar::from_int(&k, 2));
    assert!(alg.agrees_to(&alg.apply(&alg.d1(), &alg.x2()), &alg.zero(), 20));
    assert!(alg.agrees_to(&alg.apply(&alg.d2(), &alg.x1()), &alg.zero(), 20));
    assert!(alg.agrees_to(&alg.apply(&alg.d1(), &alg.x1()), &two_y, 20));
    assert!(alg.agrees_to(&alg.apply(&alg.d2(), &alg.x2()), &two_y, 20));
    // D1 is compatible with the relation: D1(y^2) = D1(x1 x2).
    let y2 = alg.mul(&alg.y(), &alg.y());
    let x1x2 = alg.mul(&alg.x1(), &alg.x2());
    assert!(alg.agrees_to(&alg.apply(&alg.d1(), &y2), &alg.apply(&alg.d1(), &x1x2), 20));
    // H = [D1, D2] acts by the weights -2, 2, 0.
    assert!(alg.agrees_to(&alg.h(&alg.x1()), &alg.scale(&alg.x1(), &PadicScalar::from_int(&k, -2)), 20));
    assert!(alg.agrees_to(&alg.h(&alg.x2()), &alg.scale(&alg.x2(), &PadicScalar::from_int(&k, 2)), 20));
    assert!(alg.agrees_to(&alg.h(&alg.y()), &alg.zero(), 20));
    // partial_i = d/dx_i on polynomials in x1, x2.
    for a in 0..4 {
        for b in 0..4 {
            let f = alg.monomial(a, b, 0);
            let want1 = if a > 0 { alg.scale(&alg.monomial(a - 1, b, 0), &PadicScalar::from_int(&k, a as i64)) } else { alg.zero() };
            let want2 = if b > 0 { alg.scale(&alg.monomial(a, b - 1, 0), &PadicScalar::from_int(&k, b as i64)) } else { alg.zero() };
            assert!(alg.agrees_to(&alg.partial(1, &f).unwrap(), &want1, 18));
            assert!(alg.agrees_to(&alg.partial(2, &f).unwrap(), &want2, 18));
        }
    }
    // partial_1 y = x2 / 2y.
    let p1y = alg.partial(1, &alg.y()).unwrap();
    assert!(alg.agrees_to(&alg.mul(&two_y, &p1y), &alg.x2(), 18));
    // Leibniz rule on a product of monomials, including negative powers of y.
    let f = alg.div_y(&alg.monomial(2, 1, 1));
    let g = alg.div_y(&alg.div_y(&alg.monomial(0, 3, 1)));
    for d in [alg.d1(), alg.d2()] {
        let lhs = alg.apply(&d, &alg.mul(&f, &g));
        let rhs = alg.add(&alg.mul(&alg.apply(&d, &f), &g), &alg.mul(&f, &alg.apply(&d, &g)));
        assert!(alg.agrees_to(&lhs, &rhs, 18));
    }
    assert!(matches!(alg.partial(3, &f), Err(Error::BadDirection { .. })));
}

#[test]
fn j_operator() {
    let k = q5();
    let alg = CoordinateAlgebra::new(&k, &PadicScalar::one(&k)).unwrap();
    let c = alg.constant(&PadicScalar::from_int(&k, 7));
    assert!(alg.is_zero_mod(&alg.j(&c), 20));
    assert!(alg.is_zero_mod(&alg.curvature(&c).unwrap(), 20));
    assert!(j_operator_check(&k, &PadicScalar::one(&k), 4).unwrap());
    assert!(j_operator_check(&k, &PadicScalar::one(&k), 6).unwrap());
    assert!(j_operator_check(&k, &PadicScalar::from_int(&k, 3), 6).unwrap());
    assert_eq!(j_operator_check(&k, &PadicScalar::from_int(&k, 5), 2).unwrap_err(), Error::NonUnitDelta);
    assert_eq!(
        j_operator_check(&Field::base(2, 10).unwrap(), &PadicScalar::one(&Field::base(2, 10).unwrap()), 2).unwrap_err(),
        Error::EvenPrimeUnsupported
    );
}

/// Conjugates every operator by a random unipotent upper-triangular P.
fn conjugate(t: &Sl2Triple, seed: u64) -> Sl2Triple {
    let k = t.field().clone();
    let n = t.dim();
    let mut rng = sampling::rng(seed);
    let mut nil = Matrix::zeros(&k, n, n);
    for i in 0..n {
        for j in i + 1..n {
            nil[(i, j)] = sampling::int_unit(&mut rng, &k, 3);
        }
    }
    let p = Matrix::identity(&k, n).add(&nil).unwrap();
    let mut inv = Matrix::identity(&k, n);
    let mut pow = Matrix::identity(&k, n);
    let minus = nil.scale(&PadicScalar::from_int(&k, -1));
    for _ in 1..n {
        pow = pow.mul(&minus).unwrap();
        inv = inv.add(&pow).unwrap();
    }
    let c = |m: &Matrix| inv.mul(m).unwrap().mul(&p).unwrap();
    Sl2Triple { d1: c(&t.d1), d2: c(&t.d2), h: c(&t.h) }
}

fn multisets(budget: usize, max_part: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for k in (0..=max_part).rev() {
        let need = k as usize + 1;
        if need > budget {
            continue;
        }
        for mut rest in multisets(budget - need, k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

#[test]
fn isotypic_examples() {
    let k = q5();
    assert_eq!(isotypic_decompose(&symk_matrices(&k, 3).ops).unwrap(), vec![3]);
    let sum = Sl2Triple::direct_sum(&[symk_matrices(&k, 2).ops, symk_matrices(&k, 0).ops]);
    assert_eq!(isotypic_decompose(&sum).unwrap(), vec![2, 0]);
    let v = symk_matrices(&k, 1).ops;
    assert_eq!(isotypic_decompose(&v.tensor(&v)).unwrap(), vec![2, 0]);
    // Sym^2 x Sym^1 = Sym^3 + Sym^1.
    assert_eq!(isotypic_decompose(&symk_matrices(&k, 2).ops.tensor(&v)).unwrap(), vec![3, 1]);
    let bad = Sl2Triple::new(Matrix::zeros(&k, 2, 2), Matrix::zeros(&k, 2, 2), v.h.clone()).unwrap();
    assert!(matches!(isotypic_decompose(&bad), Err(Error::RelationsViolated(_))));
}

#[test]
fn isotypic_recovers_every_small_multiset() {
    let k = q5();
    let all = multisets(12, 11);
    assert_eq!(all.len(), (0..=12).map(partition_count).sum::<usize>());
    for (i, ks) in all.iter().enumerate().skip(1) {
        let parts: Vec<Sl2Triple> = ks.iter().map(|&n| symk_matrices(&k, n).ops).collect();
        let rep = Sl2Triple::direct_sum(&parts);
        assert_eq!(&isotypic_decompose(&rep).unwrap(), ks);
        if i % 7 == 0 {
            assert_eq!(&isotypic_decompose(&conjugate(&rep, i as u64)).unwrap(), ks);
        }
    }
}

fn partition_count(n: usize) -> usize {
    let mut p = vec![0usize; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for m in part..=n {
            p[m] += p[m - part];
        }
    }
    p[n]
}

#[test]
fn rep_file_round_trip() {
    let k = q5();
    let t = symk_matrices(&k, 2).ops;
    let text = serde_json::to_string(&RepSpec::from_triple(&t)).unwrap();
    assert_eq!(RepSpec::parse(&text).unwrap().build(&k).unwrap(), t);
    let spec = RepSpec::parse(r#"{"dim":2,"D1":[0,0,1,0],"D2":[0,1,0,0],"H":[-1,0,0,1]}"#).unwrap();
    assert_eq!(isotypic_decompose(&spec.build(&k).unwrap()).unwrap(), vec![1]);
    assert!(RepSpec::parse(r#"{"dim":2,"D1":[0,0,1],"D2":[0,1,0,0],"H":[-1,0,0,1]}"#).unwrap().build(&k).is_err());
    assert!(RepSpec::parse("{").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn quadratic_form_scales_by_det_squared(a in -50i64..50, b in -50i64..50, c in -50i64..50, d in -50i64..50) {
        let k = q5();
        let m = ints(&k, &[&[a, b], &[c, d]]);
        let det = PadicScalar::from_int(&k, a * d - b * c);
        let q = transform_quadratic(&m).unwrap();
        let det2 = &det * &det;
        prop_assert_eq!(&q[1][1], &det2);
        prop_assert_eq!(&q[0][2], &(-&det2));
        for (i, j) in [(0, 0), (0, 1), (1, 2), (2, 2)] {
            prop_assert!(q[i][j].is_zero());
        }
    }

    #[test]
    fn symk_homomorphism_on_random_elements(seed in 0u64..1000, n in 0u32..7) {
        let k = q5();
        let mut rng = sampling::rng(seed);
        let g = SL2Element::random(&mut rng, &k);
        let h = SL2Element::random(&mut rng, &k);
        let s = symk_matrices(&k, n);
        let lhs = s.group_matrix(&g.mul(&h).unwrap());
        let rhs = s.group_matrix(&g).mul(&s.group_matrix(&h)).unwrap();
        prop_assert!(lhs.agrees_to(&rhs, 20));
    }
}
