use num_bigint::BigInt;
use num_traits::Zero;

use crate::series::{binomial, MultiIndex};

/// sum_{l=0}^{m-i} (-1)^l binom(m - i, l).
pub fn alternating_identity(m: u32, i: u32) -> BigInt {
    assert!(i <= m, "alternating_identity needs i <= m");
    let r = m - i;
    let mut acc = BigInt::zero();
    for l in 0..=r {
        let b = binomial(r, l);
        if l % 2 == 0 {
            acc += b;
        } else {
            acc -= b;
        }
    }
    acc
}

/// sum_{k + i = j} (-1)^{|k|} binom(j, k).
pub fn telescope_identity(j: &MultiIndex) -> BigInt {
    let mut acc = BigInt::zero();
    for k in j.below() {
        let b = j.binomial(&k);
        if k.degree() % 2 == 0 {
            acc += b;
        } else {
            acc -= b;
        }
    }
    acc
}

/// The derivative of X^k in direction `tau` (1-based): k_tau X^{k - 1_tau},
/// or None when k_tau = 0 or the direction is out of range.
pub fn derivative_shift_rule(k: &MultiIndex, tau: usize) -> Option<(u32, MultiIndex)> {
    if tau == 0 || tau > k.dim() {
        return None;
    }
    let e = k.0[tau - 1];
    if e == 0 {
        return None;
    }
    let mut lower = k.clone();
    lower.0[tau - 1] -= 1;
    Some((e, lower))
}
