use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::padic::{Field, GaloisElement, PadicScalar};
use crate::series::RadiusIndexedSeries;

use super::chart::{is_generator, principal_log};

/// An element sum_i a_i u^i of the truncated ring, as a one-variable series
/// whose radius is the level of the acting subgroup.
pub type SenRingElement = RadiusIndexedSeries;

fn character_of(g: &GaloisElement) -> Result<&PadicScalar> {
    g.chi().ok_or(Error::UnsupportedField)
}

/// g(sum a_i u^i) = sum g(a_i) (u + log chi(g))^i.
pub fn sen_ring_act(g: &GaloisElement, f: &SenRingElement) -> Result<SenRingElement> {
    if f.num_vars() != 1 {
        return Err(Error::ShapeMismatch(format!("ring elements have one variable, got {}", f.num_vars())));
    }
    if g.field() != f.field() {
        return Err(Error::MixedFields);
    }
    let l = principal_log(character_of(g)?, f.radius())?.embed(f.field())?;
    f.try_map_coeffs(|a| g.act(a))?.substitute(&[l])
}

/// Q_p-dimension of the fixed points of `g` on polynomials of degree <= D
/// in u with coefficients in K_n.
pub fn fixed_space_dimension(g: &GaloisElement, n: u32, degree: u32) -> Result<usize> {
    let chi = character_of(g)?;
    let src = g.field();
    let kn = if src.cyclotomic_level() == Some(n) { src.clone() } else { Field::cyclotomic(src.p(), n, src.precision())? };
    let g = GaloisElement::from_character(&kn, chi)?;
    fixed_space_dimension_in(&g, n, degree)
}

/// As `fixed_space_dimension`, with coefficients in the field of `g`.
pub fn fixed_space_dimension_in(g: &GaloisElement, n: u32, degree: u32) -> Result<usize> {
    let chi = character_of(g)?;
    if !is_generator(chi, n) {
        return Err(Error::NotAGenerator { radius: n });
    }
    let field = g.field();
    let base = field.base_field();
    let e = field.degree();
    let dim = e * (degree as usize + 1);
    let unit_vec = |t: usize| -> PadicScalar {
        let coords: Vec<PadicScalar> = (0..e).map(|s| if s == t { PadicScalar::one(&base) } else { PadicScalar::zero(&base) }).collect();
        PadicScalar::from_base_coords(field, &coords).expect("basis vector")
    };
    let mut columns = Vec::with_capacity(dim);
    for i in 0..=degree {
        for t in 0..e {
            let mut coeffs = vec![PadicScalar::zero(field); degree as usize + 1];
            coeffs[i as usize] = unit_vec(t);
            let f = RadiusIndexedSeries::univariate(field, n, degree, &coeffs)?;
            let moved = sen_ring_act(g, &f)?.sub(&f)?;
            let mut col = Vec::with_capacity(dim);
            for j in 0..=degree {
                col.extend(moved.coeff1(j).base_coords());
            }
            columns.push(col);
        }
    }
    let rows: Vec<Vec<PadicScalar>> = (0..dim).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    let m = Matrix::from_rows(rows)?;
    Ok(dim - m.rank(None)?)
}
