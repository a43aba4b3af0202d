//! Dense polynomials over the prime field F_p, lowest degree first.
//!
//! Only what the field constructors need: irreducibility by distinct-degree
//! factorization and inversion in F_p[X]/(P).

pub(crate) type FpPoly = Vec<u64>;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(p as i128) as u64)
}

pub(crate) fn trim(a: &mut FpPoly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn reduce_coeffs(a: &[i64], p: u64) -> FpPoly {
    let mut out: FpPoly = a.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
    trim(&mut out);
    out
}

fn sub(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let mut out = vec![0; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

fn mul(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
fn divrem(a: &FpPoly, b: &FpPoly, p: u64) -> (FpPoly, FpPoly) {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p).expect("leading coefficient is a unit mod p");
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = mulmod(*r.last().unwrap(), lead_inv, p);
        q[shift] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - mulmod(c, bj, p)) % p;
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn rem(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    divrem(a, b, p).1
}

fn gcd(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn powmod(base: &FpPoly, mut e: u128, m: &FpPoly, p: u64) -> FpPoly {
    let mut result: FpPoly = vec![1];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(&mul(&result, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    result
}

/// Irreducibility of a polynomial of degree >= 1 by distinct-degree
/// factorization: no factor of degree i <= deg/2 and X^{p^deg} = X mod P.
pub(crate) fn is_irreducible(poly: &FpPoly, p: u64) -> bool {
    let mut poly = poly.clone();
    trim(&mut poly);
    if poly.len() < 2 {
        return false;
    }
    let deg = poly.len() - 1;
    if deg == 1 {
        return true;
    }
    let x: FpPoly = vec![0, 1];
    let mut frob = x.clone();
    for i in 1..=deg {
        frob = powmod(&frob, p as u128, &poly, p);
        let diff = sub(&frob, &x, p);
        if i <= deg / 2 {
            let g = gcd(&diff, &poly, p);
            if g.len() > 1 {
                return false;
            }
        }
        if i == deg {
            return diff.is_empty();
        }
    }
    unreachable!()
}

/// Inverse of `a` in F_p[X]/(m), when it exists.
pub(crate) fn inv_in_quotient(a: &FpPoly, m: &FpPoly, p: u64) -> Option<FpPoly> {
    let (mut r0, mut r1) = (m.clone(), rem(a, m, p));
    let (mut s0, mut s1): (FpPoly, FpPoly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.len() != 1 {
        return None;
    }
    let c = inv_mod(r0[0], p)?;
    Some(rem(&mul(&s0, &vec![c], p), m, p))
}
