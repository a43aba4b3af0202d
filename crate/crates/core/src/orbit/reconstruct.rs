use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::padic::{PadicScalar, Valuation};
use crate::series::{MultiIndex, RadiusIndexedSeries};

use super::cmap::VectorSeries;
use super::expansion::OrbitExpansion;
use super::identities::derivative_shift_rule;

/// The series y_i in the formal variables X = x - x_n, and their resummation.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub y: BTreeMap<MultiIndex, VectorSeries>,
    pub resum: VectorSeries,
    pub radius: u32,
}

fn signed(c: &PadicScalar, k: &MultiIndex, b: &BigInt) -> PadicScalar {
    let t = c.scale_int_big(b);
    if k.degree() % 2 == 1 {
        -t
    } else {
        t
    }
}

/// y_i = sum_k (-1)^{|k|} binom(k + i, k) z_{k+i} X^k for |i| <= D, with the
/// working radius r(n) defaulting to n + 1.
pub fn reconstruct(z: &OrbitExpansion, working_radius: Option<u32>) -> Result<Reconstruction> {
    z.check_decay(z.radius().saturating_sub(1))?;
    let field = z.field();
    let d = z.chart_dim();
    let deg = z.degree();
    let radius = working_radius.unwrap_or(z.radius() + 1);
    let zero_vs = || -> Result<VectorSeries> { (0..z.ambient_dim()).map(|_| RadiusIndexedSeries::zero(field, d, radius, deg)).collect() };
    let mut y = BTreeMap::new();
    for i in MultiIndex::all_up_to(d, deg) {
        let mut yi = zero_vs()?;
        for (j, zj) in z.coefficients() {
            let Some(k) = j.checked_sub(&i) else { continue };
            let b = j.binomial(&k);
            for (s, c) in yi.iter_mut().zip(zj) {
                s.add_term(k.clone(), signed(c, &k, &b));
            }
        }
        y.insert(i, yi);
    }
    let mut resum = zero_vs()?;
    for (i, yi) in &y {
        for (acc, s) in resum.iter_mut().zip(yi) {
            for (k, c) in s.terms() {
                let e = k.add(i);
                if e.degree() <= deg {
                    acc.add_term(e, c.clone());
                }
            }
        }
    }
    Ok(Reconstruction { y, resum, radius })
}

impl Reconstruction {
    /// Formal nabla_tau(y_i): nabla_tau X^k = k_tau X^{k - 1_tau} and
    /// nabla_tau z_j = (j_tau + 1) z_{j + 1_tau}.
    pub fn nabla_y(&self, z: &OrbitExpansion, i: &MultiIndex, tau: usize) -> Result<VectorSeries> {
        let d = z.chart_dim();
        if tau == 0 || tau > d {
            return Err(Error::BadDirection { direction: tau, dim: d });
        }
        let deg = z.degree();
        let unit = MultiIndex::unit(d, tau - 1);
        let mut out: VectorSeries =
            (0..z.ambient_dim()).map(|_| RadiusIndexedSeries::zero(z.field(), d, self.radius, deg)).collect::<Result<_>>()?;
        for (j, zj) in z.coefficients() {
            let Some(k) = j.checked_sub(i) else { continue };
            let b = j.binomial(&k);
            if let Some((e, lower)) = derivative_shift_rule(&k, tau) {
                let f = &b * BigInt::from(e);
                for (s, c) in out.iter_mut().zip(zj) {
                    s.add_term(lower.clone(), signed(c, &k, &f));
                }
            }
            // Coefficient derivative: z_{j'} with j' = j - 1_tau contributes to X^{k'}.
            if let Some(jm) = j.checked_sub(&unit) {
                if let Some(km) = jm.checked_sub(i) {
                    let f = jm.binomial(&km) * BigInt::from(j.0[tau - 1]);
                    for (s, c) in out.iter_mut().zip(zj) {
                        s.add_term(km.clone(), signed(c, &km, &f));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Minimal valuation of resum - z_0 over all coefficients.
    pub fn resum_defect(&self, z: &OrbitExpansion) -> Result<Valuation> {
        let z0 = z.base();
        let mut defect = Valuation::AtLeast(z.field().precision());
        for (s, c) in self.resum.iter().zip(&z0) {
            let constant = RadiusIndexedSeries::constant(s.field(), s.num_vars(), s.radius(), s.degree(), c)?;
            let diff = s.sub(&constant)?;
            for (_, c) in diff.terms() {
                defect = defect.min(c.valuation());
            }
        }
        Ok(defect)
    }

    /// Whether every formal nabla_tau(y_i) vanishes to `bound`.
    pub fn annihilated(&self, z: &OrbitExpansion, bound: i64) -> Result<bool> {
        for i in self.y.keys() {
            for tau in 1..=z.chart_dim() {
                if !self.nabla_y(z, i, tau)?.iter().all(|s| s.is_zero_mod(bound)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Values of the y_i at a concrete shift x - x_n.
    pub fn evaluate_y(&self, shift: &[PadicScalar]) -> Result<BTreeMap<MultiIndex, Vec<PadicScalar>>> {
        self.y.iter().map(|(i, yi)| Ok((i.clone(), yi.iter().map(|s| s.evaluate_unchecked(shift)).collect::<Result<Vec<_>>>()?))).collect()
    }
}
