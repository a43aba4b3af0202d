use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::field::{Basis, Field, FieldKind};
use super::scalar::PadicScalar;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Action {
    /// Element of the cyclotomic Galois group, described by its character
    /// value chi in Z_p^x; acts by zeta -> zeta^(chi mod p^m).
    Cyclotomic { chi: PadicScalar },
    /// Power of the arithmetic Frobenius of an unramified field.
    Frobenius { power: u32 },
}

/// An automorphism of a field that fixes Q_p.
#[derive(Debug, Clone, PartialEq)]
pub struct GaloisElement {
    field: Field,
    action: Action,
}

impl GaloisElement {
    /// The group element with cyclotomic character `chi` (a unit of Z_p) acting
    /// on Q_p or a cyclotomic field.
    pub fn from_character(field: &Field, chi: &PadicScalar) -> Result<GaloisElement> {
        if !chi.field().is_base() || chi.field().p() != field.p() {
            return Err(Error::MixedFields);
        }
        if !chi.is_unit() {
            return Err(Error::NotAUnit);
        }
        match field.descriptor().kind {
            FieldKind::Base | FieldKind::Cyclotomic { .. } => {}
            FieldKind::Unramified { .. } if field.degree() == 1 => {}
            _ => return Err(Error::UnsupportedField),
        }
        Ok(GaloisElement { field: field.clone(), action: Action::Cyclotomic { chi: chi.clone() } })
    }

    /// zeta -> zeta^exponent, with character value the integer `exponent`.
    pub fn cyclotomic(field: &Field, exponent: i64) -> Result<GaloisElement> {
        let chi = PadicScalar::from_int(&field.base_field(), exponent);
        GaloisElement::from_character(field, &chi)
    }

    /// Frobenius^power on an unramified field (or the identity on Q_p).
    pub fn frobenius(field: &Field, power: u32) -> Result<GaloisElement> {
        match field.descriptor().kind {
            FieldKind::Base | FieldKind::Unramified { .. } => {}
            _ => return Err(Error::UnsupportedField),
        }
        let f = field.residue_degree();
        Ok(GaloisElement { field: field.clone(), action: Action::Frobenius { power: power % f } })
    }

    pub fn identity(field: &Field) -> Result<GaloisElement> {
        match field.descriptor().kind {
            FieldKind::Base | FieldKind::Unramified { .. } => GaloisElement::frobenius(field, 0),
            FieldKind::Cyclotomic { .. } => GaloisElement::cyclotomic(field, 1),
            FieldKind::User { .. } => Err(Error::UnsupportedField),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// The cyclotomic character value, when the element carries one.
    pub fn chi(&self) -> Option<&PadicScalar> {
        match &self.action {
            Action::Cyclotomic { chi } => Some(chi),
            Action::Frobenius { .. } => None,
        }
    }

    pub fn frobenius_power(&self) -> Option<u32> {
        match self.action {
            Action::Frobenius { power } => Some(power),
            Action::Cyclotomic { .. } => None,
        }
    }

    /// chi mod p^m for a level-m cyclotomic field.
    pub fn exponent(&self) -> Option<u64> {
        let Action::Cyclotomic { chi } = &self.action else { return None };
        let m = self.field.cyclotomic_level()?;
        let modulus = BigInt::from(self.field.p().pow(m));
        let c = chi.unit_coords()[0].mod_floor(&modulus);
        c.to_u64()
    }

    pub fn compose(&self, other: &GaloisElement) -> Result<GaloisElement> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        let action = match (&self.action, &other.action) {
            (Action::Cyclotomic { chi: a }, Action::Cyclotomic { chi: b }) => Action::Cyclotomic { chi: a * b },
            (Action::Frobenius { power: a }, Action::Frobenius { power: b }) => {
                Action::Frobenius { power: (a + b) % self.field.residue_degree() }
            }
            _ => return Err(Error::MixedFields),
        };
        Ok(GaloisElement { field: self.field.clone(), action })
    }

    pub fn powi(&self, n: u64) -> GaloisElement {
        let action = match &self.action {
            Action::Cyclotomic { chi } => Action::Cyclotomic { chi: chi.powu(n) },
            Action::Frobenius { power } => {
                let f = self.field.residue_degree() as u64;
                Action::Frobenius { power: ((*power as u64 * n) % f) as u32 }
            }
        };
        GaloisElement { field: self.field.clone(), action }
    }

    /// Order of the automorphism on the field.
    pub fn order(&self) -> u64 {
        match &self.action {
            Action::Cyclotomic { .. } => match (self.exponent(), self.field.cyclotomic_level()) {
                (Some(a), Some(m)) => {
                    let modulus = self.field.p().pow(m) as u128;
                    let mut x = a as u128 % modulus;
                    let mut k = 1;
                    while x != 1 {
                        x = x * a as u128 % modulus;
                        k += 1;
                    }
                    k
                }
                _ => 1,
            },
            Action::Frobenius { power } => {
                let f = self.field.residue_degree() as u64;
                f / f.gcd(&(*power as u64))
            }
        }
    }

    pub fn act(&self, x: &PadicScalar) -> Result<PadicScalar> {
        if *x.field() != self.field {
            return Err(Error::MixedFields);
        }
        if x.is_zero() || self.field.degree() == 1 {
            return Ok(x.clone());
        }
        let r = x.relative_precision() as u32;
        let v = match (&self.action, self.field.basis()) {
            (Action::Cyclotomic { .. }, Basis::Zeta { .. }) => {
                let a = self.exponent().expect("cyclotomic field");
                let mut v = self.field.zeta_power_raw(x.unit_coords(), a);
                self.field.reduce_mod_pr(&mut v, r);
                v
            }
            (Action::Frobenius { power }, Basis::Unramified) => {
                let mut v = x.unit_coords().to_vec();
                for _ in 0..*power {
                    v = self.field.frobenius_raw(&v, r);
                }
                v
            }
            _ => return Err(Error::UnsupportedField),
        };
        debug_assert!(v.iter().any(|c| !c.is_zero()));
        PadicScalar::from_integral_coords(&self.field, v, x.p_shift(), x.precision())
    }
}
