use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::padic::{Field, PadicScalar};

use super::symk::{symk_matrices, SL2Element};

/// Coefficients of a quadratic form in the coordinates (x1, y, x2) of
/// Sym^2 V, keyed by (i, j) with i <= j, where index 0 is x1 = e1^2,
/// 1 is y = e1 e2 and 2 is x2 = e2^2.
pub type QuadraticForm = [[PadicScalar; 3]; 3];

fn quad_q(field: &Field) -> QuadraticForm {
    let z = || PadicScalar::zero(field);
    let mut q: QuadraticForm = [[z(), z(), z()], [z(), z(), z()], [z(), z(), z()]];
    q[1][1] = PadicScalar::one(field);
    q[0][2] = PadicScalar::from_int(field, -1);
    q
}

/// The image of q = y^2 - x1 x2 under the algebra map induced by the action
/// of `m` on Sym^2 V. No determinant condition is imposed, so this also
/// serves as a witness that q scales by det(m)^2.
pub fn transform_quadratic(m: &Matrix) -> Result<QuadraticForm> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::ShapeMismatch("expected a 2x2 matrix".into()));
    }
    let field = m.field().expect("2x2").clone();
    // Sym^2 of an arbitrary matrix, via the same formula as SL2Element.
    let g = SL2Element::new_unchecked(m.clone());
    let s = symk_matrices(&field, 2).group_matrix(&g);
    let q = quad_q(&field);
    let z = || PadicScalar::zero(&field);
    let mut out: QuadraticForm = [[z(), z(), z()], [z(), z(), z()], [z(), z(), z()]];
    for a in 0..3 {
        for b in a..3 {
            if q[a][b].is_zero() {
                continue;
            }
            // basis vector a maps to sum_i s[(i, a)] b_i
            for i in 0..3 {
                for j in 0..3 {
                    let c = &(&q[a][b] * &s[(i, a)]) * &s[(j, b)];
                    let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
                    out[lo][hi] = &out[lo][hi] + &c;
                }
            }
        }
    }
    Ok(out)
}

/// Whether y^2 - x1 x2 is fixed by g, to N - 2 digits.
pub fn quad_invariant_check(m: &Matrix) -> Result<bool> {
    let g = SL2Element::new(m.clone())?;
    let field = m.field().expect("2x2").clone();
    let bound = field.precision() - 2;
    let got = transform_quadratic(g.matrix())?;
    let q = quad_q(&field);
    Ok((0..3).all(|i| (i..3).all(|j| got[i][j].agrees_to(&q[i][j], bound))))
}

/// binom(1/2, k) for k < num_terms, exactly.
pub fn sqrt_series_rationals(num_terms: usize) -> Vec<BigRational> {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let mut out = Vec::with_capacity(num_terms);
    let mut c = BigRational::from_integer(BigInt::from(1));
    for k in 0..num_terms {
        out.push(c.clone());
        c = c * (half.clone() - BigRational::from_integer(BigInt::from(k))) / BigRational::from_integer(BigInt::from(k + 1));
    }
    out
}

/// sqrt(1 + X) = sum_k binom(1/2, k) X^k, truncated to `num_terms` terms, in F.
pub fn sqrt_series(field: &Field, num_terms: usize) -> Result<Vec<PadicScalar>> {
    if field.p() == 2 {
        return Err(Error::EvenPrimeUnsupported);
    }
    Ok(sqrt_series_rationals(num_terms).iter().map(|q| PadicScalar::from_rational(field, q)).collect())
}
