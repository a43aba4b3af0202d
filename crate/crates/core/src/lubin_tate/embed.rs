use crate::error::{Error, Result};
use crate::orbit::OrbitExpansion;
use crate::padic::{plog, Field, GaloisElement, PadicScalar, Val};
use crate::series::MultiIndex;

/// The embeddings of an unramified F into the algebraic closure, as the
/// Frobenius powers 0..h; index 0 is the identity.
#[derive(Clone, Debug)]
pub struct EmbeddingSet {
    field: Field,
    maps: Vec<GaloisElement>,
}

impl EmbeddingSet {
    pub fn new(field: &Field) -> Result<Self> {
        if field.ramification_index() != 1 || field.cyclotomic_level().is_some() {
            return Err(Error::UnsupportedField);
        }
        let h = field.residue_degree();
        let maps = (0..h)
            .map(|i| if i == 0 { GaloisElement::identity(field) } else { GaloisElement::frobenius(field, i) })
            .collect::<Result<_>>()?;
        Ok(EmbeddingSet { field: field.clone(), maps })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// h = [F : Q_p].
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn apply(&self, tau: usize, x: &PadicScalar) -> Result<PadicScalar> {
        self.maps.get(tau).ok_or(Error::BadDirection { direction: tau + 1, dim: self.maps.len() })?.act(x)
    }

    /// Index of tau_i after tau_j.
    pub fn compose(&self, i: usize, j: usize) -> usize {
        (i + j) % self.maps.len()
    }
}

/// (tau(log g))_tau for a unit g with v(g - 1) >= n.
pub fn embedding_chart(e: &EmbeddingSet, g: &PadicScalar, n: u32) -> Result<Vec<PadicScalar>> {
    let g = g.embed(e.field())?;
    let d = &g - &PadicScalar::one(e.field());
    if !d.valuation().is_at_least(Val::from_integer(n as i64)) {
        return Err(Error::NotPrincipalUnit(n));
    }
    let l = plog(&g)?;
    (0..e.len()).map(|tau| e.apply(tau, &l)).collect()
}

/// The orbit of the period x_tau in the model W = F x_tau + F:
/// g(x_tau) = x_tau + tau(log g), as coefficients in the chart of all embeddings.
pub fn coordinate_orbit(e: &EmbeddingSet, tau: usize, radius: u32, degree: u32) -> Result<OrbitExpansion> {
    let h = e.len();
    if tau >= h {
        return Err(Error::BadDirection { direction: tau + 1, dim: h });
    }
    let one = PadicScalar::one(e.field());
    let zero = PadicScalar::zero(e.field());
    OrbitExpansion::from_coefficients(
        e.field(),
        2,
        h,
        radius,
        degree,
        [(MultiIndex::zero(h), vec![one.clone(), zero.clone()]), (MultiIndex::unit(h, tau), vec![zero, one])],
    )
}
