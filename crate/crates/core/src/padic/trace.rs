use num_bigint::BigInt;
use num_traits::Zero;

use super::field::Basis;
use super::scalar::PadicScalar;
use crate::error::{Error, Result};

/// Normalized trace R_n = [K_m : K_n]^{-1} Tr_{K_m/K_n} on the level-m
/// cyclotomic field, returned as an element of K_m.
///
/// On the basis zeta^j the conjugates over K_n sum to zero unless zeta^j
/// already lies in K_n, so R_n keeps exactly the coordinates with
/// p^{m-n} | j. For n = 0 the powers of zeta_p other than 1 each have
/// normalized trace -1/(p - 1).
pub fn normalized_trace(x: &PadicScalar, n: u32) -> Result<PadicScalar> {
    let field = x.field();
    let (Some(m), Basis::Zeta { .. }) = (field.cyclotomic_level(), field.basis()) else {
        return Err(Error::UnsupportedField);
    };
    if n > m {
        return Err(Error::LevelMismatch { target: n, level: m });
    }
    if x.is_zero() || n == m {
        return Ok(x.clone());
    }
    if n == 0 {
        let step = field.p().pow(m - 1) as usize;
        let coords = x.unit_coords();
        let c0 = coords.first().cloned().unwrap_or_default();
        let rest: BigInt = coords.iter().enumerate().filter(|(j, _)| *j > 0 && j % step == 0).map(|(_, c)| c).sum();
        let integral = |c: BigInt| {
            let mut v = vec![BigInt::zero(); field.degree()];
            v[0] = c;
            PadicScalar::from_integral_coords(field, v, x.p_shift(), x.precision())
        };
        let denom = PadicScalar::from_int(field, field.p() as i64 - 1).inverse()?;
        return Ok(&integral(c0)? - &(&integral(rest)? * &denom));
    }
    let step = field.p().pow(m - n) as usize;
    let v: Vec<BigInt> = x.unit_coords().iter().enumerate().map(|(j, c)| if j % step == 0 { c.clone() } else { BigInt::zero() }).collect();
    PadicScalar::from_integral_coords(field, v, x.p_shift(), x.precision())
}
