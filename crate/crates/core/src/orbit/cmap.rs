use crate::error::{Error, Result};
use crate::padic::{Field, PadicScalar, Valuation};
use crate::series::{MultiIndex, RadiusIndexedSeries};

use super::chart::AnalyticMatrixAction;
use super::expansion::OrbitExpansion;

/// One series per ambient coordinate.
pub type VectorSeries = Vec<RadiusIndexedSeries>;

/// C(w) = sum_k (-1)^k w_k T^k for an orbit with a one-dimensional chart.
pub fn cmap(w: &OrbitExpansion) -> Result<VectorSeries> {
    if w.chart_dim() != 1 {
        return Err(Error::NotRankOneChart(w.chart_dim()));
    }
    w.check_decay(w.radius())?;
    let field = w.field();
    (0..w.ambient_dim())
        .map(|j| {
            let terms = w.coefficients().map(|(k, v)| {
                let c = if k.0[0] % 2 == 1 { -v[j].clone() } else { v[j].clone() };
                (k.clone(), c)
            });
            RadiusIndexedSeries::from_terms(field, 1, w.radius(), w.degree(), terms)
        })
        .collect()
}

/// g acting on W<T>: coefficients by g(a) * Mat(g), then T -> T + l(g).
pub fn combined_action(action: &AnalyticMatrixAction, chi: &PadicScalar, c: &[RadiusIndexedSeries]) -> Result<VectorSeries> {
    if c.len() != action.dim() {
        return Err(Error::ShapeMismatch(format!("{} components for a {}-dimensional action", c.len(), action.dim())));
    }
    let l = action.chart_coordinate(chi)?.embed(action.field())?;
    let m = action.mat(chi)?;
    let galois = action.coefficient_galois(chi)?;
    let moved: Vec<RadiusIndexedSeries> = match &galois {
        Some(g) => c.iter().map(|s| s.try_map_coeffs(|a| g.act(a))).collect::<Result<_>>()?,
        None => c.to_vec(),
    };
    (0..action.dim())
        .map(|j| {
            let mut acc = moved[0].empty_like();
            for (i, s) in moved.iter().enumerate() {
                acc = acc.add(&s.scale(&m[(i, j)]))?;
            }
            acc.substitute(std::slice::from_ref(&l))
        })
        .collect()
}

/// Smallest truncation D' >= D such that the omitted tail of an
/// exponential-type orbit, v >= n(D' + 1 - D) - (D' + 1)/(p - 1), clears
/// `target`; capped by the series degree limit.
pub fn working_degree(p: u64, precision: i64, radius: u32, degree: u32, target: i64) -> u32 {
    let cap = (p as i64 * precision - 1).max(degree as i64) as u32;
    let mut dp = degree;
    while dp < cap {
        let k = dp as i64 + 1;
        let tail = radius as i64 * (k - degree as i64) - k / (p as i64 - 1);
        if tail > target {
            break;
        }
        dp += 1;
    }
    dp
}

#[derive(Clone, Debug)]
pub struct InvarianceReport {
    /// Minimum valuation of g(C(w)) - C(w) to degree D over all sampled g.
    pub defect: Valuation,
    pub passed: bool,
}

/// Checks g(C(w)) = C(w) coefficientwise to `bound` and degree `degree`
/// for the orbit of `w` under `action` and each sampled character value.
pub fn check_cmap_invariance(
    action: &AnalyticMatrixAction,
    w: &[PadicScalar],
    chis: &[PadicScalar],
    degree: u32,
    bound: i64,
) -> Result<InvarianceReport> {
    let field = action.field();
    let dp = working_degree(field.p(), field.precision(), action.radius(), degree, field.precision());
    let orbit = OrbitExpansion::from_action(action, w, dp)?;
    let c = cmap(&orbit)?;
    let mut defect = Valuation::AtLeast(i64::MAX / 4);
    for chi in chis {
        let moved = combined_action(action, chi, &c)?;
        for (a, b) in moved.iter().zip(&c) {
            let diff = a.truncate(degree).sub(&b.truncate(degree))?;
            for k in MultiIndex::all_up_to(1, degree) {
                defect = defect.min(diff.coeff(&k).valuation());
            }
        }
    }
    let passed = defect.is_at_least(crate::padic::Val::from_integer(bound));
    Ok(InvarianceReport { defect, passed })
}

/// A named test action with a vector whose coordinates are fixed by the group.
#[derive(Clone, Debug)]
pub struct OrbitModel {
    pub name: String,
    pub action: AnalyticMatrixAction,
    pub w: Vec<PadicScalar>,
}

/// The standard F-analytic models: constant, additive, character and unipotent.
pub fn standard_models(field: &Field, radius: u32, s: i64) -> Vec<OrbitModel> {
    let one = PadicScalar::one(field);
    let zero = PadicScalar::zero(field);
    vec![
        OrbitModel {
            name: "constant".into(),
            action: AnalyticMatrixAction::trivial(field, radius, 2),
            w: vec![PadicScalar::from_int(field, 3), PadicScalar::from_ratio(field, 1, 7)],
        },
        OrbitModel { name: "additive".into(), action: AnalyticMatrixAction::additive(field, radius), w: vec![one.clone(), zero.clone()] },
        OrbitModel { name: format!("character s={s}"), action: AnalyticMatrixAction::character(field, radius, 1, s), w: vec![one.clone()] },
        OrbitModel { name: "unipotent".into(), action: AnalyticMatrixAction::unipotent(field, radius), w: vec![one, zero] },
    ]
}
