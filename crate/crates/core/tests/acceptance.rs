//! Acceptance criteria at p = 5, N = 20, D = 12. Prints one line per
//! criterion and exits nonzero if any fails.

use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use senlab::linalg::Matrix;
use senlab::lubin_tate::{lt_build, lt_endo, lt_log, lt_torsion_slopes, LTFormalGroup, LiftKind, Slope};
use senlab::orbit::{
    alternating_identity, check_cmap_invariance, fixed_space_dimension, generator_character, reconstruct, standard_models,
    telescope_identity, AnalyticMatrixAction, OrbitExpansion,
};
use senlab::padic::{normalized_trace, Field, GaloisElement, PadicScalar, Val};
use senlab::sampling::{self, SuiteRng};
use senlab::sen::{iota, sen_operator, sen_spectrum_symk};
use senlab::series::text::parse_series;
use senlab::series::{MultiIndex, RadiusIndexedSeries};
use senlab::sl2::{isotypic_decompose, j_operator_check, quad_invariant_check, symk_matrices, weight_spectrum, SL2Element, Sl2Triple};

const P: u64 = 5;
const N: i64 = 20;
const D: u32 = 12;
const SEED: u64 = 2024;

/// Coefficientwise tolerance for inversion, C-map, reconstruction, Tate
/// traces and the Sen operator of a character.
const TOL: i64 = N - 2;
/// Radius-stability tolerance for the Sen operator.
const TOL_RADIUS: i64 = N - 3;
/// Formal-group identities: N - 1 - floor(log_5 D) digits survive the
/// denominators of the logarithm up to degree D.
const TOL_LT: i64 = N - 2;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn err(e: senlab::Error) -> String {
    e.to_string()
}

fn qp() -> Field {
    Field::base(P, N).unwrap()
}

fn vanishes(s: &RadiusIndexedSeries, bound: i64, what: &str) -> Check {
    ensure(s.is_zero_mod(bound), || format!("{what}: min valuation {:?} < {bound}", s.min_coeff_valuation().map(|(_, v)| v.to_string())))
}

fn close(a: &PadicScalar, b: &PadicScalar, bound: i64, what: &str) -> Check {
    ensure(a.agrees_to(b, bound), || format!("{what}: difference has valuation {}", (a - b).valuation()))
}

fn binomial_identities() -> Check {
    for m in 0..=D {
        for i in 0..=m {
            let want = if i == m { BigInt::one() } else { BigInt::zero() };
            ensure(alternating_identity(m, i) == want, || format!("alternating identity m={m} i={i}"))?;
        }
    }
    for d in 1..=3 {
        for j in MultiIndex::all_up_to(d, 8) {
            let want = if j.is_zero() { BigInt::one() } else { BigInt::zero() };
            ensure(telescope_identity(&j) == want, || format!("telescope identity j={:?}", j.0))?;
        }
    }
    Ok(())
}

fn gauss_norm_laws() -> Check {
    let mut rng = sampling::rng(SEED);
    let k1 = Field::cyclotomic(P, 1, N).map_err(err)?;
    for i in 0..100 {
        let field = if i % 2 == 0 { qp() } else { k1.clone() };
        let d = 1 + i % 2;
        let n = 1 + (i as u32 / 2) % 2;
        let f = sampling::series(&mut rng, &field, d, n, D, 0.5, 0);
        let g = sampling::series(&mut rng, &field, d, n, D, 0.5, 0);
        let (nf, ng) = (f.norm().value.lower_bound(), g.norm().value.lower_bound());
        let fg = f.mul(&g).map_err(err)?;
        ensure(fg.is_zero() || fg.norm().value.lower_bound() >= nf + ng, || format!("pair {i}: |fg| > |f||g|"))?;
        for m in n..n + 3 {
            let lo = f.gauss_norm(m).map_err(err)?.value.lower_bound();
            let hi = f.gauss_norm(m + 1).map_err(err)?.value.lower_bound();
            ensure(hi >= lo, || format!("pair {i}: |f|_{} > |f|_{m}", m + 1))?;
        }
    }
    Ok(())
}

fn inversion() -> Check {
    let mut rng = sampling::rng(SEED + 1);
    let k = qp();
    for i in 0..50 {
        let d = 1 + i % 2;
        let n = 1 + (i as u32 / 2) % 2;
        let f = sampling::invertible_series(&mut rng, &k, d, n, D);
        let one = RadiusIndexedSeries::one(&k, d, n, D).map_err(err)?;
        let defect = f.mul(&f.invert().map_err(err)?).and_then(|h| h.sub(&one)).map_err(err)?;
        vanishes(&defect, TOL, &format!("f * invert(f) - 1, sample {i}"))?;
    }
    Ok(())
}

fn units(rng: &mut SuiteRng, count: usize) -> Vec<i64> {
    let mut us = Vec::new();
    while us.len() < count {
        let u = rng.gen_range(-500i64..=500);
        if u % P as i64 != 0 {
            us.push(u);
        }
    }
    us
}

fn cmap_invariance() -> Check {
    let mut rng = sampling::rng(SEED + 2);
    let k = qp();
    for n in 1..=2 {
        for model in standard_models(&k, n, 2).into_iter().filter(|m| m.name == "additive" || m.name.starts_with("character")) {
            let chis: Vec<_> = units(&mut rng, 20).into_iter().map(|u| generator_character(&k, n, u)).collect();
            let r = check_cmap_invariance(&model.action, &model.w, &chis, D, TOL).map_err(err)?;
            ensure(r.passed, || format!("{} at n={n}: defect {}", model.name, r.defect))?;
        }
    }
    Ok(())
}

fn random_orbit(rng: &mut SuiteRng, k: &Field, d: usize, deg: u32) -> Result<OrbitExpansion, String> {
    let coeffs: Vec<_> = MultiIndex::all_up_to(d, deg)
        .into_iter()
        .map(|j| {
            let first = if j.is_zero() { sampling::unit(rng, k) } else { sampling::scalar(rng, k, 0) };
            (j, vec![first, sampling::scalar(rng, k, 0)])
        })
        .collect();
    OrbitExpansion::from_coefficients(k, 2, d, 1, deg, coeffs).map_err(err)
}

fn reconstruction() -> Check {
    let mut rng = sampling::rng(SEED + 3);
    let k = qp();
    for i in 0..50 {
        let d = 1 + i % 2;
        let deg = rng.gen_range(0..=4u32);
        let z = random_orbit(&mut rng, &k, d, deg)?;
        let r = reconstruct(&z, None).map_err(err)?;
        let defect = r.resum_defect(&z).map_err(err)?;
        ensure(defect.is_at_least(Val::from_integer(TOL)), || format!("orbit {i}: resum - z0 has valuation {defect}"))?;
        ensure(r.annihilated(&z, TOL).map_err(err)?, || format!("orbit {i}: some nabla(y_i) does not vanish"))?;
    }
    Ok(())
}

fn sen_fixed_points() -> Check {
    let k1 = Field::cyclotomic(P, 1, N).map_err(err)?;
    for u in [1, 2, -7] {
        let g = GaloisElement::from_character(&k1, &generator_character(&k1, 1, u)).map_err(err)?;
        for d in 1..=6 {
            let dim = fixed_space_dimension(&g, 1, d).map_err(err)?;
            ensure(dim == 4, || format!("u={u}, D={d}: fixed space has dimension {dim}, expected 4"))?;
        }
    }
    Ok(())
}

fn lift_vars(f: &RadiusIndexedSeries, total: usize, map: &[usize]) -> RadiusIndexedSeries {
    let terms = f.terms().map(|(j, c)| {
        let mut e = vec![0u32; total];
        for (i, &slot) in map.iter().enumerate() {
            e[slot] += j.0[i];
        }
        (MultiIndex(e), c.clone())
    });
    RadiusIndexedSeries::from_terms(f.field(), total, f.radius(), f.degree(), terms).unwrap()
}

fn formal_group_laws(g: &LTFormalGroup, rng: &mut SuiteRng) -> Check {
    let k = g.field().clone();
    let law = g.law();
    let var = |n, j| RadiusIndexedSeries::variable(&k, n, 1, D, j).unwrap();
    let c = |r: senlab::Result<RadiusIndexedSeries>| r.map_err(err);
    let swapped = law.compose(&[var(2, 1), var(2, 0)]).map_err(err)?;
    vanishes(&c(law.sub(&swapped))?, TOL_LT, "commutativity")?;
    let left = c(law.compose(&[lift_vars(&law, 3, &[0, 1]), var(3, 2)]))?;
    let right = c(law.compose(&[var(3, 0), lift_vars(&law, 3, &[1, 2])]))?;
    vanishes(&c(left.sub(&right))?, TOL_LT, "associativity")?;
    let zero = RadiusIndexedSeries::zero(&k, 1, 1, D).map_err(err)?;
    vanishes(&c(c(law.compose(&[var(1, 0), zero]))?.sub(&var(1, 0)))?, TOL_LT, "F(X, 0) = X")?;
    let f = g.lift();
    let lhs = c(f.compose(std::slice::from_ref(&law)))?;
    let rhs = c(law.compose(&[c(f.compose(&[var(2, 0)]))?, c(f.compose(&[var(2, 1)]))?]))?;
    vanishes(&c(lhs.sub(&rhs))?, TOL_LT, "f(F(X, Y)) = F(f(X), f(Y))")?;
    ensure(lt_endo(g, g.uniformizer()).map_err(err)?.series == f, || "[pi] differs from f".into())?;
    let log = lt_log(g).map_err(err)?;
    let sum = c(c(log.compose(&[var(2, 0)]))?.add(&c(log.compose(&[var(2, 1)]))?))?;
    vanishes(&c(c(log.compose(std::slice::from_ref(&law)))?.sub(&sum))?, TOL_LT, "log F(X, Y) = log X + log Y")?;
    for _ in 0..3 {
        let a = sampling::scalar(rng, &k, 0);
        let b = sampling::scalar(rng, &k, 0);
        let ea = lt_endo(g, &a).map_err(err)?.series;
        let eb = lt_endo(g, &b).map_err(err)?.series;
        let eab = lt_endo(g, &(&a * &b)).map_err(err)?.series;
        let esum = lt_endo(g, &(&a + &b)).map_err(err)?.series;
        vanishes(&c(c(ea.compose(std::slice::from_ref(&eb)))?.sub(&eab))?, TOL_LT, "[a][b] = [ab]")?;
        vanishes(&c(c(law.compose(&[ea.clone(), eb]))?.sub(&esum))?, TOL_LT, "F([a], [b]) = [a + b]")?;
        vanishes(&c(c(log.compose(&[ea]))?.sub(&log.scale(&a)))?, TOL_LT, "log [a] = a log")?;
    }
    Ok(())
}

fn lubin_tate() -> Check {
    let k = qp();
    let five = PadicScalar::from_int(&k, 5);
    let mut rng = sampling::rng(SEED + 4);
    let standard = lt_build(&k, &five, LiftKind::Standard, None, D).map_err(err)?;
    let multiplicative = lt_build(&k, &five, LiftKind::Multiplicative, None, D).map_err(err)?;
    formal_group_laws(&standard, &mut rng).map_err(|e| format!("standard: {e}"))?;
    formal_group_laws(&multiplicative, &mut rng).map_err(|e| format!("multiplicative: {e}"))?;
    let xy = parse_series(&k, 2, 1, D, "T1 + T2 + T1 T2").map_err(err)?;
    ensure(multiplicative.law() == xy, || "multiplicative law is not X + Y + XY".into())?;
    for (level, slope, mult) in [(1, Val::new(1, 4), 4), (2, Val::new(1, 20), 20)] {
        let got = lt_torsion_slopes(&standard, level).map_err(err)?;
        ensure(got == vec![Slope { slope, multiplicity: mult }], || format!("level {level} slopes {got:?}"))?;
    }
    Ok(())
}

fn sl2() -> Check {
    let k = qp();
    for kk in 0..=8u32 {
        let rep = symk_matrices(&k, kk);
        rep.ops.check_relations(N).map_err(|e| format!("Sym^{kk}: {e}"))?;
        let want: Vec<i64> = (0..=kk as i64).map(|i| 2 * i - kk as i64).collect();
        let got = weight_spectrum(&rep.ops.h).map_err(err)?;
        ensure(got == want, || format!("Sym^{kk} weights {got:?}"))?;
    }
    let mut rng = sampling::rng(SEED + 5);
    for i in 0..50 {
        let g = SL2Element::random(&mut rng, &k);
        ensure(quad_invariant_check(g.matrix()).map_err(err)?, || format!("quadratic form moved by sample {i}"))?;
    }
    for delta in [1, 2, -3, 7] {
        let ok = j_operator_check(&k, &PadicScalar::from_int(&k, delta), 6).map_err(err)?;
        ensure(ok, || format!("J operator identity fails for delta={delta}"))?;
    }
    let mut count = 0;
    for ks in senlab::cli::weight_multisets(12, 11).into_iter().skip(1) {
        let parts: Vec<Sl2Triple> = ks.iter().map(|&w| symk_matrices(&k, w).ops).collect();
        let got = isotypic_decompose(&Sl2Triple::direct_sum(&parts)).map_err(err)?;
        ensure(got == ks, || format!("decomposition of {ks:?} gave {got:?}"))?;
        count += 1;
    }
    ensure(count == 271, || format!("{count} multisets of total dimension <= 12, expected 271"))
}

fn sen_calculus() -> Check {
    let k = qp();
    let gamma = GaloisElement::from_character(&k, &generator_character(&k, 1, 1)).map_err(err)?;
    for s in -3..=3 {
        let d = sen_operator(&AnalyticMatrixAction::character(&k, 1, 2, s), &gamma).map_err(err)?;
        let want = Matrix::scalar(&k, 2, &PadicScalar::from_int(&k, s));
        ensure(d.theta.agrees_to(&want, TOL), || format!("Theta(chi^{s}) differs from {s} Id"))?;
    }
    for action in
        [AnalyticMatrixAction::character(&k, 1, 2, 2), AnalyticMatrixAction::unipotent(&k, 1), AnalyticMatrixAction::additive(&k, 1)]
    {
        let t1 = sen_operator(&action, &gamma).map_err(err)?.theta;
        let t2 = sen_operator(&action.with_radius(2), &gamma.powi(P)).map_err(err)?.theta;
        ensure(t1.agrees_to(&t2, TOL_RADIUS), || {
            format!("radius stability: difference has valuation {}", t1.sub(&t2).unwrap().valuation())
        })?;
    }
    let mut rng = sampling::rng(SEED + 6);
    for i in 0..20 {
        let mut m = |shift| Matrix::from_rows((0..3).map(|_| (0..3).map(|_| sampling::scalar(&mut rng, &k, shift)).collect()).collect());
        let theta0 = m(1).map_err(err)?;
        let d = m(0).map_err(err)?;
        let desc = sen_operator(&AnalyticMatrixAction::exponential(1, theta0).map_err(err)?, &gamma).map_err(err)?;
        ensure(iota(&d, &desc, D).map_err(err)?.constant_term() == &d, || format!("sample {i}: constant term of iota(d) is not d"))?;
    }
    for kk in 0..=5 {
        for s in [1, 2] {
            let r = sen_spectrum_symk(&k, &PadicScalar::from_int(&k, s), kk).map_err(err)?;
            ensure(r.matches_expected, || format!("Sym^{kk}, s={s}: weights {:?}", r.weights))?;
        }
    }
    Ok(())
}

fn tate_traces() -> Check {
    let k = Field::cyclotomic(P, 3, N).map_err(err)?;
    let mut rng = sampling::rng(SEED + 7);
    let c = |r: senlab::Result<PadicScalar>| r.map_err(err);
    for sample in 0..10 {
        let x = sampling::scalar(&mut rng, &k, 0);
        let y = sampling::scalar(&mut rng, &k, 0);
        let e = loop {
            let e = rng.gen_range(1..125i64);
            if e % 5 != 0 {
                break e;
            }
        };
        let g = GaloisElement::cyclotomic(&k, e).map_err(err)?;
        for n in 0..=3 {
            let rn = c(normalized_trace(&x, n))?;
            close(&c(normalized_trace(&rn, n))?, &rn, TOL, &format!("sample {sample}: R_{n} R_{n} = R_{n}"))?;
            for m in n..=3 {
                close(&c(normalized_trace(&c(normalized_trace(&x, m))?, n))?, &rn, TOL, &format!("sample {sample}: R_{n} R_{m} = R_{n}"))?;
            }
            close(&c(normalized_trace(&c(g.act(&x))?, n))?, &c(g.act(&rn))?, TOL, &format!("sample {sample}: R_{n} commutes with gamma"))?;
            let a = c(normalized_trace(&sampling::scalar(&mut rng, &k, 0), n))?;
            let b = c(normalized_trace(&sampling::scalar(&mut rng, &k, 0), n))?;
            let lhs = c(normalized_trace(&(&(&a * &x) + &(&b * &y)), n))?;
            let rhs = &(&a * &rn) + &(&b * &c(normalized_trace(&y, n))?);
            close(&lhs, &rhs, TOL, &format!("sample {sample}: R_{n} is K_{n}-linear"))?;
        }
    }
    Ok(())
}

fn verify_all(threads: Option<&str>) -> Result<Vec<u8>, String> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_senlab"));
    cmd.args(["verify", "all", "--seed", "42", "--p", "5", "--N", "20", "--D", "12", "--json"]);
    match threads {
        Some(t) => cmd.env("SENLAB_THREADS", t),
        None => cmd.env_remove("SENLAB_THREADS"),
    };
    let out = cmd.output().map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || format!("exit status {:?}: {}", out.status, String::from_utf8_lossy(&out.stdout)))?;
    Ok(out.stdout)
}

fn cli_determinism() -> Check {
    let first = verify_all(None)?;
    ensure(first == verify_all(None)?, || "two runs differ".into())?;
    ensure(first == verify_all(Some("1"))?, || "SENLAB_THREADS=1 differs".into())?;
    ensure(first == verify_all(Some("4"))?, || "SENLAB_THREADS=4 differs".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("binomial identities", binomial_identities),
        ("Gauss-norm laws", gauss_norm_laws),
        ("inversion", inversion),
        ("C-map invariance", cmap_invariance),
        ("reconstruction", reconstruction),
        ("Sen ring fixed points", sen_fixed_points),
        ("Lubin-Tate", lubin_tate),
        ("sl2", sl2),
        ("Sen calculus", sen_calculus),
        ("Tate traces", tate_traces),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let ms = start.elapsed().as_millis();
        match result {
            Ok(()) => println!("PASS {:>2}. {name} ({ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2}. {name} ({ms} ms): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
