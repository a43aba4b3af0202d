use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::padic::PadicScalar;

use super::symk::Sl2Triple;

/// Digits lost dividing by 1..=n.
fn denominator_loss(p: u64, n: usize) -> i64 {
    (1..=n as u64)
        .map(|k| {
            let mut k = k;
            let mut v = 0;
            while k % p == 0 {
                k /= p;
                v += 1;
            }
            v
        })
        .sum()
}

/// Characteristic polynomial det(x - A), constant term first, through the
/// power sums tr(A^k) and Newton's identities.
pub fn characteristic_polynomial(a: &Matrix) -> Result<Vec<PadicScalar>> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch("characteristic polynomial of a non-square matrix".into()));
    }
    let n = a.rows();
    let field = a.field().expect("nonempty").clone();
    let mut power_sums = Vec::with_capacity(n);
    let mut pow = Matrix::identity(&field, n);
    for _ in 0..n {
        pow = pow.mul(a)?;
        power_sums.push(pow.trace());
    }
    // e_k = (1/k) sum_{i=1}^{k} (-1)^(i-1) e_(k-i) p_i
    let mut e = vec![PadicScalar::one(&field)];
    for k in 1..=n {
        let mut acc = PadicScalar::zero(&field);
        for i in 1..=k {
            let term = &e[k - i] * &power_sums[i - 1];
            acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        e.push(acc.try_div(&PadicScalar::from_int(&field, k as i64))?);
    }
    // det(x - A) = sum_k (-1)^k e_k x^(n-k)
    let mut coeffs = vec![PadicScalar::zero(&field); n + 1];
    for (k, ek) in e.into_iter().enumerate() {
        coeffs[n - k] = if k % 2 == 0 { ek } else { -&ek };
    }
    Ok(coeffs)
}

fn eval_poly(coeffs: &[PadicScalar], x: &PadicScalar) -> PadicScalar {
    coeffs.iter().rev().fold(PadicScalar::zero(x.field()), |acc, c| &(&acc * x) + c)
}

/// Synthetic division by (x - r); returns the quotient.
fn deflate(coeffs: &[PadicScalar], r: &PadicScalar) -> Vec<PadicScalar> {
    let n = coeffs.len() - 1;
    let mut q = vec![PadicScalar::zero(r.field()); n];
    let mut carry = PadicScalar::zero(r.field());
    for i in (1..=n).rev() {
        carry = &(&carry * r) + &coeffs[i];
        q[i - 1] = carry.clone();
    }
    q
}

/// Eigenvalues of H as integers, ascending with multiplicity. The
/// candidates are bounded by sqrt(tr H^2). A candidate r counts only when
/// H - r is singular, which rules out integers merely p-adically close to
/// many eigenvalues, and multiplicities come from kernel dimensions when
/// those add up to the dimension. The result is accepted only if the
/// product of (x - r) reproduces the characteristic polynomial.
pub fn weight_spectrum(h: &Matrix) -> Result<Vec<i64>> {
    let n = h.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let field = h.field().expect("nonempty").clone();
    let bound = field.precision().min(h.min_precision()) - 2 - denominator_loss(field.p(), n);
    let chi = characteristic_polynomial(h)?;
    let tr2 = h.mul(h)?.trace().to_small_integer().ok_or(Error::NonIntegralSpectrum)?;
    if tr2 < 0 {
        return Err(Error::NonIntegralSpectrum);
    }
    let r_max = (tr2 as f64).sqrt().floor() as i64 + 1;
    let kernel_bound = field.precision().min(h.min_precision()) - 2;
    let mut geometric = Vec::new();
    let mut algebraic = Vec::new();
    for r in -r_max..=r_max {
        let x = PadicScalar::from_int(&field, r);
        if !eval_poly(&chi, &x).is_zero_mod(bound) {
            continue;
        }
        let g = h.sub(&Matrix::scalar(&field, n, &x))?.kernel(Some(kernel_bound))?.len();
        if g == 0 {
            continue;
        }
        let mut rest = chi.clone();
        let mut a = 0;
        while rest.len() > 1 && eval_poly(&rest, &x).is_zero_mod(bound) {
            rest = deflate(&rest, &x);
            a += 1;
        }
        geometric.push((r, g));
        algebraic.push((r, a.max(g)));
    }
    // Semisimple H is settled by kernel dimensions; otherwise fall back to
    // the vanishing order of the characteristic polynomial.
    let counts = if geometric.iter().map(|&(_, g)| g).sum::<usize>() == n { geometric } else { algebraic };
    let roots: Vec<i64> = counts.into_iter().flat_map(|(r, m)| std::iter::repeat_n(r, m)).collect();
    if roots.len() != n {
        return Err(Error::NonIntegralSpectrum);
    }
    let mut prod = vec![PadicScalar::one(&field)];
    for &r in &roots {
        let mut next = vec![PadicScalar::zero(&field); prod.len() + 1];
        for (i, c) in prod.iter().enumerate() {
            next[i + 1] = &next[i + 1] + c;
            next[i] = &next[i] - &c.scale_int(r);
        }
        prod = next;
    }
    if prod.iter().zip(&chi).any(|(a, b)| !a.agrees_to(b, bound)) {
        return Err(Error::NonIntegralSpectrum);
    }
    Ok(roots)
}

/// Hodge-Tate weights s * w for the integer spectrum w of H.
pub fn scaled_spectrum(h: &Matrix, s: &PadicScalar) -> Result<Vec<PadicScalar>> {
    Ok(weight_spectrum(h)?.into_iter().map(|w| s.scale_int(w)).collect())
}

fn stacked_kernel_dim(blocks: &[Matrix], bound: i64) -> Result<usize> {
    let field = blocks[0].field().expect("nonempty").clone();
    let cols = blocks[0].cols();
    let rows: usize = blocks.iter().map(|b| b.rows()).sum();
    let mut m = Matrix::zeros(&field, rows, cols);
    let mut r0 = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..cols {
                m[(r0 + i, j)] = b[(i, j)].clone();
            }
        }
        r0 += b.rows();
    }
    Ok(m.kernel(Some(bound))?.len())
}

/// Multiset of k with Sym^k occurring in the representation, descending.
/// Highest-weight vectors of weight k are the common kernel of D1 (which
/// raises the H-weight by 2) and H - k.
pub fn isotypic_decompose(rep: &Sl2Triple) -> Result<Vec<u32>> {
    let n = rep.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let field = rep.field().clone();
    let bound = field.precision().min(rep.h.min_precision()) - 2 - denominator_loss(field.p(), n);
    rep.check_relations(bound)?;
    let weights = weight_spectrum(&rep.h)?;
    let mut algebraic: BTreeMap<i64, usize> = BTreeMap::new();
    for &w in &weights {
        *algebraic.entry(w).or_default() += 1;
    }
    let id = Matrix::identity(&field, n);
    let shifted = |w: i64| rep.h.sub(&id.scale(&PadicScalar::from_int(&field, w))).expect("square");
    for (&w, &m) in &algebraic {
        let geometric = stacked_kernel_dim(&[shifted(w)], bound)?;
        if geometric != m {
            return Err(Error::NonSemisimpleInput(format!("H has a Jordan block at weight {w}")));
        }
    }
    let mut mult: BTreeMap<u32, usize> = BTreeMap::new();
    for (&w, _) in algebraic.range(0..) {
        let c = stacked_kernel_dim(&[shifted(w), rep.d1.clone()], bound)?;
        if c > 0 {
            mult.insert(w as u32, c);
        }
    }
    for (&w, &m) in &algebraic {
        let predicted: usize = mult.iter().filter(|(&k, _)| k as i64 >= w.abs() && (k as i64 - w) % 2 == 0).map(|(_, &c)| c).sum();
        if predicted != m {
            return Err(Error::NonSemisimpleInput(format!("weight {w} has dimension {m}, highest weights predict {predicted}")));
        }
    }
    let total: usize = mult.iter().map(|(&k, &c)| (k as usize + 1) * c).sum();
    if total != n {
        return Err(Error::NonSemisimpleInput(format!("highest weights account for dimension {total} of {n}")));
    }
    let mut out: Vec<u32> = mult.into_iter().flat_map(|(k, c)| std::iter::repeat_n(k, c)).collect();
    out.reverse();
    Ok(out)
}
