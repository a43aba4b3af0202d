use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::lubin_tate::{lt_build, lt_endo, lt_log, lt_torsion_slopes, LTFormalGroup, LiftKind, Slope};
use crate::orbit::{
    alternating_identity, check_cmap_invariance, derivative_shift_rule, fixed_space_dimension, generator_character, reconstruct,
    standard_models, telescope_identity, AnalyticMatrixAction, OrbitExpansion,
};
use crate::padic::{normalized_trace, Field, GaloisElement, PadicScalar, Val};
use crate::sampling::{self, SuiteRng};
use crate::sen::{analytic_bound, base_radius, iota, one_param, sen_operator, sen_spectrum_symk};
use crate::series::text::parse_series;
use crate::series::{MultiIndex, RadiusIndexedSeries};
use crate::sl2::{isotypic_decompose, j_operator_check, quad_invariant_check, symk_matrices, weight_spectrum, SL2Element, Sl2Triple};

use super::report::{run_cases, Case, Outcome, SuiteParams, SuiteReport};

/// Suite names in the order `all` runs them.
pub const SUITES: [&str; 7] = ["identities", "norms", "cmap", "reconstruct", "lubin-tate", "sl2", "sen"];

/// The suites a selector names.
pub(super) fn suite_names(selector: &str) -> Result<Vec<&'static str>> {
    match selector {
        "all" => Ok(SUITES.to_vec()),
        s => SUITES.iter().find(|&&n| n == s).map(|&n| vec![n]).ok_or_else(|| Error::UnknownSuite(s.to_string())),
    }
}

pub(super) fn run_suite(name: &str, params: &SuiteParams) -> Result<SuiteReport> {
    Field::base(params.p, params.precision)?;
    Ok(run_cases(name, build_suite(name, params)?))
}

/// Runs one suite, or every suite for `all`.
pub fn run_verify(selector: &str, params: &SuiteParams) -> Result<Vec<SuiteReport>> {
    suite_names(selector)?.into_iter().map(|name| run_suite(name, params)).collect()
}

fn build_suite(name: &str, pr: &SuiteParams) -> Result<Vec<Case>> {
    match name {
        "identities" => identities(pr),
        "norms" => norms(pr),
        "cmap" => cmap_suite(pr),
        "reconstruct" => reconstruct_suite(pr),
        "lubin-tate" => lubin_tate_suite(pr),
        "sl2" => sl2_suite(pr),
        "sen" => sen_suite(pr),
        other => Err(Error::UnknownSuite(other.to_string())),
    }
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

fn stream(pr: &SuiteParams, suite: u64, idx: u64) -> SuiteRng {
    sampling::sub_rng(pr.seed, suite * 1_000_003 + idx)
}

fn series_vanishing(s: &RadiusIndexedSeries, bound: i64) -> Outcome {
    if s.is_zero_mod(bound) {
        return Outcome::Pass;
    }
    let got = s.min_coeff_valuation().map(|(k, v)| format!("{v} at {:?}", k.0)).unwrap_or_default();
    Outcome::Fail { expected: format!("valuation >= {bound}"), got: got.clone(), discrepancy: Some(got) }
}

fn scalar_agrees(a: &PadicScalar, b: &PadicScalar, bound: i64) -> Outcome {
    Outcome::expect_vanishing((a - b).valuation(), bound)
}

fn matrix_agrees(a: &Matrix, b: &Matrix, bound: i64) -> Result<Outcome> {
    Ok(Outcome::expect_vanishing(a.sub(b)?.valuation(), bound))
}

fn identities(pr: &SuiteParams) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    let jmax = pr.degree.min(8);
    for m in 0..=pr.degree {
        cases.push(Case::new(format!("alternating m={m}"), json!({ "m": m }), move || {
            Ok(Outcome::all((0..=m).map(|i| {
                let want = if i == m { BigInt::one() } else { BigInt::zero() };
                Outcome::expect_eq(want, alternating_identity(m, i))
            })))
        }));
    }
    for d in 1..=3usize {
        cases.push(Case::new(format!("telescope d={d}"), json!({ "d": d, "max_degree": jmax }), move || {
            Ok(Outcome::all(MultiIndex::all_up_to(d, jmax).into_iter().map(|j| {
                let want = if j.is_zero() { BigInt::one() } else { BigInt::zero() };
                Outcome::expect_eq(want, telescope_identity(&j))
            })))
        }));
    }
    let field = Field::base(pr.p, pr.precision)?;
    let degree = pr.degree.max(1);
    for d in 1..=3usize {
        let k = field.clone();
        cases.push(Case::new(format!("shift rule d={d}"), json!({ "d": d, "max_degree": jmax }), move || {
            let mut out = Vec::new();
            for j in MultiIndex::all_up_to(d, jmax.min(degree)) {
                let f = RadiusIndexedSeries::from_terms(&k, d, 1, degree, [(j.clone(), PadicScalar::one(&k))])?;
                for tau in 1..=d {
                    let df = f.derive(tau)?;
                    let want = match derivative_shift_rule(&j, tau) {
                        None => RadiusIndexedSeries::zero(&k, d, 1, degree - 1)?,
                        Some((c, lower)) => {
                            RadiusIndexedSeries::from_terms(&k, d, 1, degree - 1, [(lower, PadicScalar::from_int(&k, c as i64))])?
                        }
                    };
                    out.push(Outcome::expect(df == want, &format!("d/dX_{tau} X^{:?} follows the shift rule", j.0)));
                }
            }
            Ok(Outcome::all(out))
        }));
    }
    Ok(cases)
}

fn norm_laws(f: &RadiusIndexedSeries, g: &RadiusIndexedSeries, n: u32) -> Result<Outcome> {
    let (nf, ng) = (f.norm().value.lower_bound(), g.norm().value.lower_bound());
    let fg = f.mul(g)?;
    let mut out = vec![Outcome::expect(fg.is_zero() || fg.norm().value.lower_bound() >= nf + ng, "|fg| <= |f| |g|")];
    let s = f.add(g)?;
    out.push(Outcome::expect(s.is_zero() || s.norm().value.lower_bound() >= nf.min(ng), "|f + g| <= max(|f|, |g|)"));
    for m in n..n + 3 {
        let lo = f.gauss_norm(m)?.value.lower_bound();
        let hi = f.gauss_norm(m + 1)?.value.lower_bound();
        out.push(Outcome::expect(hi >= lo, &format!("|f|_{} <= |f|_{m}", m + 1)));
    }
    Ok(Outcome::all(out))
}

fn norms(pr: &SuiteParams) -> Result<Vec<Case>> {
    let qp = Field::base(pr.p, pr.precision)?;
    let k1 = Field::cyclotomic(pr.p, 1, pr.precision)?;
    let bound = pr.precision - 2;
    let degree = pr.degree;
    let mut cases = Vec::new();
    for i in 0..100u64 {
        let field = if i % 2 == 0 { qp.clone() } else { k1.clone() };
        let d = 1 + (i as usize / 2) % 2;
        let n = 1 + (i as u32 / 4) % 2;
        let rng = stream(pr, 2, i);
        let inputs = json!({ "field": field_name(&field), "d": d, "n": n });
        cases.push(Case::new(format!("gauss pair {i}"), inputs, move || {
            let mut rng = rng.clone();
            let f = sampling::series(&mut rng, &field, d, n, degree, 0.5, 0);
            let g = sampling::series(&mut rng, &field, d, n, degree, 0.5, 0);
            norm_laws(&f, &g, n)
        }));
    }
    for i in 0..50u64 {
        let field = qp.clone();
        let d = 1 + i as usize % 2;
        let n = 1 + (i as u32 / 2) % 2;
        let rng = stream(pr, 3, i);
        cases.push(Case::new(format!("inversion {i}"), json!({ "d": d, "n": n }), move || {
            let mut rng = rng.clone();
            let f = sampling::invertible_series(&mut rng, &field, d, n, degree);
            let one = RadiusIndexedSeries::one(&field, d, n, degree)?;
            Ok(series_vanishing(&f.mul(&f.invert()?)?.sub(&one)?, bound))
        }));
    }
    let top = 3u32;
    let tower = Field::cyclotomic(pr.p, top, pr.precision)?;
    let modulus = (pr.p as i64).pow(top);
    for i in 0..12u64 {
        let k = tower.clone();
        let mut rng = stream(pr, 4, i);
        let gexp = loop {
            let e = rng.gen_range(1..modulus);
            if e % pr.p as i64 != 0 {
                break e;
            }
        };
        cases.push(Case::new(format!("tate traces {i}"), json!({ "level": top, "g": gexp }), move || {
            let mut rng = rng.clone();
            let x = sampling::scalar(&mut rng, &k, 0);
            let y = sampling::scalar(&mut rng, &k, 0);
            let g = GaloisElement::cyclotomic(&k, gexp)?;
            let mut out = Vec::new();
            for n in 0..=top {
                let rn = normalized_trace(&x, n)?;
                out.push(scalar_agrees(&normalized_trace(&rn, n)?, &rn, bound));
                for m in n..=top {
                    out.push(scalar_agrees(&normalized_trace(&normalized_trace(&x, m)?, n)?, &rn, bound));
                }
                out.push(scalar_agrees(&normalized_trace(&g.act(&x)?, n)?, &g.act(&rn)?, bound));
                let a = normalized_trace(&sampling::scalar(&mut rng, &k, 0), n)?;
                let b = normalized_trace(&sampling::scalar(&mut rng, &k, 0), n)?;
                let lhs = normalized_trace(&(&(&a * &x) + &(&b * &y)), n)?;
                let rhs = &(&a * &rn) + &(&b * &normalized_trace(&y, n)?);
                out.push(scalar_agrees(&lhs, &rhs, bound));
            }
            Ok(Outcome::all(out))
        }));
    }
    Ok(cases)
}

fn field_name(k: &Field) -> String {
    match k.cyclotomic_level() {
        Some(m) => format!("Q{}(zeta_{}^{m})", k.p(), k.p()),
        None if k.degree() == 1 => format!("Q{}", k.p()),
        None => format!("Q{}^{}", k.p(), k.degree()),
    }
}

/// Units u, so that 1 + p^n u generates 1 + p^n Z_p.
fn sampled_units(rng: &mut SuiteRng, field: &Field, count: usize) -> Vec<i64> {
    let p = field.p() as i64;
    let mut us = Vec::with_capacity(count);
    while us.len() < count {
        let u = rng.gen_range(-500i64..=500);
        if u % p != 0 {
            us.push(u);
        }
    }
    us
}

fn cmap_suite(pr: &SuiteParams) -> Result<Vec<Case>> {
    let qp = Field::base(pr.p, pr.precision)?;
    let k1 = Field::cyclotomic(pr.p, 1, pr.precision)?;
    let bound = pr.precision - 2;
    let degree = pr.degree;
    let mut cases = Vec::new();
    let mut idx = 0u64;
    let mut push_model = |cases: &mut Vec<Case>, field: &Field, n: u32, coefficients: bool| {
        for model in standard_models(field, n, 2) {
            let mut rng = stream(pr, 5, idx);
            idx += 1;
            let us = sampled_units(&mut rng, field, 20);
            let name = format!("{} n={n} over {}", model.name, field_name(field));
            let field = field.clone();
            cases.push(Case::new(name, json!({ "n": n, "u": us }), move || {
                let chis: Vec<PadicScalar> = us.iter().map(|&u| generator_character(&field, n, u)).collect();
                let action = model.action.clone().with_coefficient_action(coefficients);
                let report = check_cmap_invariance(&action, &model.w, &chis, degree, bound)?;
                Ok(Outcome::expect_vanishing(report.defect, bound))
            }));
        }
    };
    let r0 = base_radius(pr.p);
    for n in r0..=r0 + 1 {
        push_model(&mut cases, &qp, n, false);
    }
    push_model(&mut cases, &k1, r0, true);
    let expected = k1.degree();
    for d in 1..=6u32 {
        let k = k1.clone();
        let mut rng = stream(pr, 6, d as u64);
        let u = sampled_units(&mut rng, &k, 1)[0];
        cases.push(Case::new(format!("sen ring fixed points D={d}"), json!({ "D": d, "u": u }), move || {
            let g = GaloisElement::from_character(&k, &generator_character(&k, 1, u))?;
            Ok(Outcome::expect_eq(expected, fixed_space_dimension(&g, 1, d)?))
        }));
    }
    Ok(cases)
}

fn random_polynomial_orbit(rng: &mut SuiteRng, field: &Field, d: usize, deg: u32, dim: usize) -> Result<OrbitExpansion> {
    let coeffs: Vec<_> = MultiIndex::all_up_to(d, deg)
        .into_iter()
        .map(|k| {
            let v = (0..dim)
                .map(|i| if i == 0 && k.is_zero() { sampling::unit(rng, field) } else { sampling::scalar(rng, field, 0) })
                .collect();
            (k, v)
        })
        .collect();
    OrbitExpansion::from_coefficients(field, dim, d, 1, deg, coeffs)
}

fn reconstruct_suite(pr: &SuiteParams) -> Result<Vec<Case>> {
    let qp = Field::base(pr.p, pr.precision)?;
    let bound = pr.precision - 2;
    let mut cases = Vec::new();
    for i in 0..60u64 {
        let d = 1 + i as usize % 2;
        let mut rng = stream(pr, 7, i);
        let deg = rng.gen_range(0..=4u32);
        let field = qp.clone();
        cases.push(Case::new(format!("orbit {i}"), json!({ "d": d, "degree": deg, "dim": 2 }), move || {
            let mut rng = rng.clone();
            let z = random_polynomial_orbit(&mut rng, &field, d, deg, 2)?;
            let r = reconstruct(&z, None)?;
            Ok(Outcome::all([
                Outcome::expect_vanishing(r.resum_defect(&z)?, bound),
                Outcome::expect(r.annihilated(&z, bound)?, "every y_i is killed by nabla in the non-identity directions"),
            ]))
        }));
    }
    Ok(cases)
}

/// Re-indexes a series into `total` variables, variable i going to slot map[i].
fn lift_vars(f: &RadiusIndexedSeries, total: usize, map: &[usize]) -> Result<RadiusIndexedSeries> {
    let terms = f.terms().map(|(k, c)| {
        let mut e = vec![0u32; total];
        for (i, &slot) in map.iter().enumerate() {
            e[slot] += k.0[i];
        }
        (MultiIndex(e), c.clone())
    });
    RadiusIndexedSeries::from_terms(f.field(), total, f.radius(), f.degree(), terms)
}

fn group_axioms(g: &LTFormalGroup, bound: i64) -> Result<Outcome> {
    let law = g.law();
    let k = g.field();
    let d = law.degree();
    let mut out = vec![Outcome::expect(law.truncate(1) == parse_series(k, 2, 1, 1, "T1 + T2")?, "F = X + Y mod degree 2")];
    for (idx, c) in law.terms() {
        if idx.0[1] == 0 && idx.0[0] > 1 {
            out.push(Outcome::expect_vanishing(c.valuation(), bound));
        }
        out.push(scalar_agrees(c, &law.coeff(&MultiIndex(vec![idx.0[1], idx.0[0]])), bound));
    }
    let x = RadiusIndexedSeries::variable(k, 3, 1, d, 0)?;
    let z = RadiusIndexedSeries::variable(k, 3, 1, d, 2)?;
    let left = law.compose(&[lift_vars(&law, 3, &[0, 1])?, z])?;
    let right = law.compose(&[x, lift_vars(&law, 3, &[1, 2])?])?;
    out.push(series_vanishing(&left.sub(&right)?, bound));
    let f = g.lift();
    let x2 = RadiusIndexedSeries::variable(k, 2, 1, d, 0)?;
    let y2 = RadiusIndexedSeries::variable(k, 2, 1, d, 1)?;
    let lhs = f.compose(std::slice::from_ref(&law))?;
    let rhs = law.compose(&[f.compose(&[x2])?, f.compose(&[y2])?])?;
    out.push(series_vanishing(&lhs.sub(&rhs)?, bound));
    Ok(Outcome::all(out))
}

fn endomorphism_laws(g: &LTFormalGroup, rng: &mut SuiteRng, bound: i64) -> Result<Outcome> {
    let k = g.field().clone();
    let mut out = vec![Outcome::expect(lt_endo(g, g.uniformizer())?.series == g.lift(), "[pi] = f")];
    let one = lt_endo(g, &PadicScalar::one(&k))?.series;
    out.push(series_vanishing(&one.sub(&RadiusIndexedSeries::variable(&k, 1, 1, g.degree(), 0)?)?, bound));
    for _ in 0..3 {
        let a = sampling::scalar(rng, &k, 0);
        let b = sampling::scalar(rng, &k, 0);
        let ea = lt_endo(g, &a)?.series;
        let eb = lt_endo(g, &b)?.series;
        let eab = lt_endo(g, &(&a * &b))?.series;
        let esum = lt_endo(g, &(&a + &b))?.series;
        out.push(series_vanishing(&ea.compose(std::slice::from_ref(&eb))?.sub(&eab)?, bound));
        out.push(series_vanishing(&g.law().compose(&[ea, eb])?.sub(&esum)?, bound));
    }
    Ok(Outcome::all(out))
}

fn log_laws(g: &LTFormalGroup, rng: &mut SuiteRng, bound: i64) -> Result<Outcome> {
    let k = g.field().clone();
    let log = lt_log(g)?;
    let x = RadiusIndexedSeries::variable(&k, 2, 1, g.degree(), 0)?;
    let y = RadiusIndexedSeries::variable(&k, 2, 1, g.degree(), 1)?;
    let lhs = log.compose(&[g.law()])?;
    let rhs = log.compose(&[x])?.add(&log.compose(&[y])?)?;
    let mut out = vec![series_vanishing(&lhs.sub(&rhs)?, bound)];
    for a in [sampling::scalar(rng, &k, 0), g.uniformizer().clone()] {
        let ea = lt_endo(g, &a)?.series;
        out.push(series_vanishing(&log.compose(&[ea])?.sub(&log.scale(&a))?, bound));
    }
    Ok(Outcome::all(out))
}

fn expected_slopes(q: u64, n: u32) -> Vec<Slope> {
    let m = q.pow(n - 1) * (q - 1);
    vec![Slope { slope: Val::new(1, m as i64), multiplicity: m }]
}

fn lubin_tate_suite(pr: &SuiteParams) -> Result<Vec<Case>> {
    let p = pr.p;
    let n = pr.precision;
    let degree = pr.degree;
    // Denominators of log_F and [a] up to degree D cost floor(log_p D) digits.
    let bound = n - 1 - ilog(p, degree.max(1) as u64);
    type Builder = Arc<dyn Fn() -> Result<LTFormalGroup> + Send + Sync>;
    let qp = Field::base(p, n)?;
    let qq = Field::unramified_of_degree(p, 2, n)?;
    let build = |k: &Field, lift: LiftKind, degree: u32| -> Builder {
        let k = k.clone();
        Arc::new(move || lt_build(&k, &PadicScalar::from_int(&k, p as i64), lift.clone(), None, degree))
    };
    let models: Vec<(&str, Builder, u32)> = vec![
        ("standard Qp", build(&qp, LiftKind::Standard, degree), 2),
        ("multiplicative Qp", build(&qp, LiftKind::Multiplicative, degree), 2),
        ("standard Qq (f=2)", build(&qq, LiftKind::Standard, degree.min(8)), 1),
    ];
    let mut cases = Vec::new();
    let mut idx = 0u64;
    for (name, model, levels) in models {
        let m = model.clone();
        cases.push(Case::new(format!("{name}: group law"), json!({ "model": name }), move || group_axioms(&m()?, bound)));
        for (what, law) in [("endomorphisms", 0), ("logarithm", 1)] {
            let m = model.clone();
            let rng = stream(pr, 8, idx);
            idx += 1;
            cases.push(Case::new(format!("{name}: {what}"), json!({ "model": name }), move || {
                let mut rng = rng.clone();
                let g = m()?;
                if law == 0 {
                    endomorphism_laws(&g, &mut rng, bound)
                } else {
                    log_laws(&g, &mut rng, bound)
                }
            }));
        }
        for level in 1..=levels {
            let m = model.clone();
            cases.push(Case::new(format!("{name}: torsion slopes level {level}"), json!({ "model": name, "level": level }), move || {
                let g = m()?;
                Ok(Outcome::expect_eq(expected_slopes(g.q(), level), lt_torsion_slopes(&g, level)?))
            }));
        }
    }
    let m = build(&qp, LiftKind::Multiplicative, degree);
    cases.push(Case::new("multiplicative Qp: law is X + Y + XY", json!({}), move || {
        let g = m()?;
        Ok(Outcome::expect(g.law() == parse_series(g.field(), 2, 1, g.degree(), "T1 + T2 + T1 T2")?, "F = X + Y + XY"))
    }));
    Ok(cases)
}

/// Conjugates every operator by I + N for a random strictly upper-triangular N.
fn conjugate(t: &Sl2Triple, rng: &mut SuiteRng) -> Result<Sl2Triple> {
    let k = t.field().clone();
    let n = t.dim();
    let mut nil = Matrix::zeros(&k, n, n);
    for i in 0..n {
        for j in i + 1..n {
            nil[(i, j)] = sampling::int_unit(rng, &k, 3);
        }
    }
    let p = Matrix::identity(&k, n).add(&nil)?;
    let mut inv = Matrix::identity(&k, n);
    let mut pow = Matrix::identity(&k, n);
    let minus = nil.scale(&PadicScalar::from_int(&k, -1));
    for _ in 1..n {
        pow = pow.mul(&minus)?;
        inv = inv.add(&pow)?;
    }
    let c = |m: &Matrix| inv.mul(m)?.mul(&p);
    Ok(Sl2Triple { d1: c(&t.d1)?, d2: c(&t.d2)?, h: c(&t.h)? })
}

/// All multisets of highest weights with total dimension at most `budget`,
/// each listed in descending order.
pub fn weight_multisets(budget: usize, max_part: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for k in (0..=max_part).rev() {
        let need = k as usize + 1;
        if need > budget {
            continue;
        }
        for mut rest in weight_multisets(budget - need, k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

fn sl2_suite(pr: &SuiteParams) -> Result<Vec<Case>> {
    let field = Field::base(pr.p, pr.precision)?;
    let n = pr.precision;
    let mut cases = Vec::new();
    for k in 0..=8u32 {
        let f = field.clone();
        cases.push(Case::new(format!("Sym^{k} relations and weights"), json!({ "k": k }), move || {
            let rep = symk_matrices(&f, k);
            let rel = match rep.ops.check_relations(n) {
                Ok(()) => Outcome::Pass,
                Err(e) => Outcome::Fail { expected: "relations hold".into(), got: e.to_string(), discrepancy: None },
            };
            let want: Vec<i64> = (0..=k as i64).map(|i| 2 * i - k as i64).collect();
            Ok(Outcome::all([rel, Outcome::expect_eq(want, weight_spectrum(&rep.ops.h)?)]))
        }));
    }
    for i in 0..50u64 {
        let f = field.clone();
        let rng = stream(pr, 9, i);
        cases.push(Case::new(format!("quadratic invariance {i}"), json!({}), move || {
            let g = SL2Element::random(&mut rng.clone(), &f);
            Ok(Outcome::expect(quad_invariant_check(g.matrix())?, "q(g x) = q(x)"))
        }));
    }
    for delta in [1i64, 2, -3] {
        let f = field.clone();
        cases.push(Case::new(format!("J operator delta={delta}"), json!({ "delta": delta, "max_degree": 6 }), move || {
            if f.p() == 2 {
                return Ok(Outcome::Skip("needs an odd prime".into()));
            }
            if delta % f.p() as i64 == 0 {
                return Ok(Outcome::Skip("delta is not a unit".into()));
            }
            Ok(Outcome::expect(j_operator_check(&f, &PadicScalar::from_int(&f, delta), 6)?, "J = 4 y^3 [d1, d2] on all monomials"))
        }));
    }
    for (i, ks) in weight_multisets(12, 11).into_iter().enumerate().skip(1) {
        let f = field.clone();
        let rng = stream(pr, 10, i as u64);
        let conj = i % 7 == 0;
        cases.push(Case::new(format!("isotypic {ks:?}"), json!({ "weights": ks, "conjugated": conj }), move || {
            let parts: Vec<Sl2Triple> = ks.iter().map(|&k| symk_matrices(&f, k).ops).collect();
            let mut rep = Sl2Triple::direct_sum(&parts);
            if conj {
                rep = conjugate(&rep, &mut rng.clone())?;
            }
            Ok(Outcome::expect_eq(ks.clone(), isotypic_decompose(&rep)?))
        }));
    }
    Ok(cases)
}

fn sen_suite(pr: &SuiteParams) -> Result<Vec<Case>> {
    let k = Field::base(pr.p, pr.precision)?;
    let p = pr.p;
    let r0 = base_radius(p);
    let bound = analytic_bound(p, pr.precision, r0);
    let degree = pr.degree;
    let gamma = move |k: &Field, n: u32, u: i64| GaloisElement::from_character(k, &generator_character(k, n, u));
    let mut cases = Vec::new();
    for s in -3..=3i64 {
        let k = k.clone();
        cases.push(Case::new(format!("character s={s}"), json!({ "s": s, "dim": 2 }), move || {
            let d = sen_operator(&AnalyticMatrixAction::character(&k, r0, 2, s), &gamma(&k, r0, 1)?)?;
            Ok(Outcome::all([
                matrix_agrees(&d.theta, &Matrix::scalar(&k, 2, &PadicScalar::from_int(&k, s)), bound)?,
                Outcome::expect_eq(Some(vec![s, s]), d.spectrum),
            ]))
        }));
    }
    let models: Vec<(&str, AnalyticMatrixAction)> = vec![
        ("character s=2", AnalyticMatrixAction::character(&k, r0, 2, 2)),
        ("unipotent", AnalyticMatrixAction::unipotent(&k, r0)),
        ("additive", AnalyticMatrixAction::additive(&k, r0)),
    ];
    for (name, action) in models {
        let k = k.clone();
        cases.push(Case::new(format!("radius stability {name}"), json!({ "model": name }), move || {
            let g = gamma(&k, r0, 1)?;
            let t1 = sen_operator(&action, &g)?.theta;
            let t2 = sen_operator(&action.with_radius(r0 + 1), &g.powi(p))?.theta;
            matrix_agrees(&t1, &t2, analytic_bound(p, k.precision(), r0 + 1))
        }));
    }
    for i in 0..20u64 {
        let k = k.clone();
        let rng = stream(pr, 11, i);
        cases.push(Case::new(format!("iota constant term {i}"), json!({ "dim": 3 }), move || {
            let mut rng = rng.clone();
            let rows = |rng: &mut SuiteRng, shift| -> Result<Matrix> {
                Matrix::from_rows((0..3).map(|_| (0..3).map(|_| sampling::scalar(rng, &k, shift)).collect()).collect())
            };
            let theta0 = rows(&mut rng, 1)?;
            let d = rows(&mut rng, 0)?;
            let desc = sen_operator(&AnalyticMatrixAction::exponential(r0, theta0.clone())?, &gamma(&k, r0, 1)?)?;
            let e = iota(&d, &desc, degree)?;
            Ok(Outcome::all([
                Outcome::expect(e.constant_term() == &d, "the constant term of iota(d) is d"),
                matrix_agrees(&desc.theta, &theta0, bound)?,
            ]))
        }));
    }
    for kk in 0..=5u32 {
        for s in [1i64, 2] {
            let k = k.clone();
            cases.push(Case::new(format!("Sym^{kk} spectrum s={s}"), json!({ "k": kk, "s": s }), move || {
                let r = sen_spectrum_symk(&k, &PadicScalar::from_int(&k, s), kk)?;
                Ok(Outcome::expect(r.matches_expected, &format!("Theta = {s} H with weights {:?}", r.weights)))
            }));
        }
    }
    for i in 0..10u64 {
        let k = k.clone();
        let rng = stream(pr, 12, i);
        cases.push(Case::new(format!("one-parameter subgroup {i}"), json!({ "dim": 2 }), move || {
            let mut rng = rng.clone();
            let a = Matrix::from_rows((0..2).map(|_| (0..2).map(|_| sampling::scalar(&mut rng, &k, 0)).collect()).collect())?;
            let s = sampling::scalar(&mut rng, &k, r0 as i64);
            let t = sampling::scalar(&mut rng, &k, r0 as i64);
            let lhs = one_param(&a, &(&s + &t))?;
            let rhs = one_param(&a, &s)?.mul(&one_param(&a, &t)?)?;
            matrix_agrees(&lhs, &rhs, analytic_bound(p, k.precision(), 1))
        }));
    }
    Ok(cases)
}
