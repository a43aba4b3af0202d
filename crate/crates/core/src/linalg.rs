//! Dense matrices over a p-adic field.

use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::padic::{Field, PadicScalar, Val, Valuation};

#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<PadicScalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = PadicScalar;
    fn index(&self, (i, j): (usize, usize)) -> &PadicScalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut PadicScalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![PadicScalar::zero(field); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = PadicScalar::one(field);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<PadicScalar>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged matrix rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_rationals(field: &Field, rows: &[Vec<BigRational>]) -> Result<Matrix> {
        Matrix::from_rows(rows.iter().map(|row| row.iter().map(|q| PadicScalar::from_rational(field, q)).collect()).collect())
    }

    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|row| row.iter().map(|&x| PadicScalar::from_int(field, x)).collect()).collect())
            .expect("rectangular")
    }

    pub fn scalar(field: &Field, n: usize, c: &PadicScalar) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[PadicScalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[PadicScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<PadicScalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn field(&self) -> Option<&Field> {
        self.data.first().map(|x| x.field())
    }

    pub fn map(&self, f: impl Fn(&PadicScalar) -> PadicScalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map(&self, f: impl Fn(&PadicScalar) -> Result<PadicScalar>) -> Result<Matrix> {
        Ok(Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect::<Result<_>>()? })
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    fn check_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!("{}x{} vs {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.try_add(b)).collect::<Result<_>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.try_sub(b)).collect::<Result<_>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!("cannot multiply {}x{} by {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let field = self.field().or(other.field()).expect("nonempty matrix").clone();
        let mut out = Matrix::zeros(&field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() && a.precision() >= field.precision() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a.try_mul(&other[(k, j)])?;
                    out[(i, j)] = out[(i, j)].try_add(&t)?;
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &PadicScalar) -> Matrix {
        self.map(|x| x * c)
    }

    /// `self * v` for a column vector.
    pub fn apply(&self, v: &[PadicScalar]) -> Result<Vec<PadicScalar>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        (0..self.rows)
            .map(|i| {
                let mut acc = PadicScalar::zero(v[0].field());
                for (a, x) in self.row(i).iter().zip(v) {
                    acc = acc.try_add(&a.try_mul(x)?)?;
                }
                Ok(acc)
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn apply_left(&self, v: &[PadicScalar]) -> Result<Vec<PadicScalar>> {
        self.transpose().apply(v)
    }

    pub fn commutator(&self, other: &Matrix) -> Result<Matrix> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Minimum valuation of the entries.
    pub fn valuation(&self) -> Valuation {
        self.data.iter().map(|x| x.valuation()).reduce(|a, b| a.min(b)).unwrap_or(Valuation::AtLeast(i64::MAX))
    }

    pub fn is_zero_mod(&self, bound: i64) -> bool {
        self.data.iter().all(|x| x.is_zero_mod(bound))
    }

    pub fn agrees_to(&self, other: &Matrix, bound: i64) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data.iter().zip(&other.data).all(|(a, b)| a.agrees_to(b, bound))
    }

    pub fn is_exactly_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn min_precision(&self) -> i64 {
        self.data.iter().map(|x| x.precision()).min().unwrap_or(i64::MAX)
    }

    pub fn trace(&self) -> PadicScalar {
        let field = self.field().expect("nonempty matrix").clone();
        (0..self.rows.min(self.cols)).fold(PadicScalar::zero(&field), |acc, i| &acc + &self[(i, i)])
    }

    /// Power with a nonnegative exponent.
    pub fn powu(&self, mut e: u64) -> Result<Matrix> {
        let field = self.field().expect("nonempty matrix").clone();
        let mut result = Matrix::identity(&field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Right kernel: a basis of {v : self * v = 0}, by Gaussian elimination
    /// pivoting on the entry of least valuation. Entries with valuation at
    /// least `tolerance` (or zero to precision) count as zero.
    pub fn kernel(&self, tolerance: Option<i64>) -> Result<Vec<Vec<PadicScalar>>> {
        let field = match self.field() {
            Some(f) => f.clone(),
            None => return Ok(Vec::new()),
        };
        let negligible = |x: &PadicScalar| match tolerance {
            Some(t) => x.is_zero_mod(t),
            None => x.is_zero(),
        };
        let mut a = self.clone();
        let mut pivots: Vec<usize> = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let mut best: Option<(usize, Val)> = None;
            for i in r..self.rows {
                let x = &a[(i, c)];
                if negligible(x) {
                    continue;
                }
                let v = x.valuation().lower_bound();
                if best.is_none_or(|(_, bv)| v < bv) {
                    best = Some((i, v));
                }
            }
            let Some((pi, _)) = best else { continue };
            for j in 0..self.cols {
                a.data.swap(r * self.cols + j, pi * self.cols + j);
            }
            let inv = a[(r, c)].inverse()?;
            for j in 0..self.cols {
                a[(r, j)] = &a[(r, j)] * &inv;
            }
            for i in 0..self.rows {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in 0..self.cols {
                    let t = &f * &a[(r, j)];
                    a[(i, j)] = &a[(i, j)] - &t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![PadicScalar::zero(&field); self.cols];
            v[free] = PadicScalar::one(&field);
            for (row, &pc) in pivots.iter().enumerate() {
                let x = &a[(row, free)];
                if !negligible(x) {
                    v[pc] = -x;
                }
            }
            basis.push(v);
        }
        Ok(basis)
    }

    pub fn rank(&self, tolerance: Option<i64>) -> Result<usize> {
        Ok(self.cols - self.kernel(tolerance)?.len())
    }

    /// Mercator series log(I + X), X = self - I, for v(X) > 0.
    pub fn log(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("log of a non-square matrix".into()));
        }
        let field = self.field().expect("nonempty matrix").clone();
        let x = self.sub(&Matrix::identity(&field, self.rows))?;
        let c = match x.valuation() {
            Valuation::AtLeast(_) => return Ok(Matrix::zeros(&field, self.rows, self.rows)),
            Valuation::Finite(v) => v,
        };
        if c <= Val::from_integer(0) {
            return Err(Error::LogDivergence(c.to_string()));
        }
        let target = self.min_precision();
        let p = field.p();
        let mut sum = Matrix::zeros(&field, self.rows, self.rows);
        let mut pw = x.clone();
        let mut k: i64 = 1;
        loop {
            let coef = PadicScalar::from_rational_with_prec(
                &field,
                &BigRational::new(if k % 2 == 1 { 1.into() } else { (-1).into() }, k.into()),
                target + 4,
            );
            sum = sum.add(&pw.scale(&coef))?;
            let kk = k + 1;
            let bound = c * Val::from_integer(kk) - Val::from_integer(ilog(p, kk as u64));
            if (kk as f64) * num_traits::ToPrimitive::to_f64(&c).unwrap() * (p as f64).ln() > 1.0 && bound >= Val::from_integer(target) {
                return Ok(sum);
            }
            pw = pw.mul(&x)?;
            if pw.is_exactly_zero() {
                return Ok(sum);
            }
            k = kk;
        }
    }

    /// Exponential series, for entries of valuation > 1/(p-1) or nilpotent input.
    pub fn exp(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("exp of a non-square matrix".into()));
        }
        let field = self.field().expect("nonempty matrix").clone();
        let p = field.p();
        let n = self.rows;
        let bound = Val::new(1, p as i64 - 1);
        let v = self.valuation().lower_bound();
        let nilpotent = self.powu(n as u64)?.is_exactly_zero();
        if v <= bound && !nilpotent {
            return Err(Error::ConvergenceViolation { got: self.valuation().to_string(), bound: bound.to_string() });
        }
        let target = self.min_precision();
        let mut sum = Matrix::identity(&field, n);
        let mut term = Matrix::identity(&field, n);
        let mut k: i64 = 1;
        loop {
            let inv_k = PadicScalar::from_rational_with_prec(&field, &BigRational::new(1.into(), k.into()), target + 4);
            term = term.mul(self)?.scale(&inv_k);
            if term.is_exactly_zero() {
                return Ok(sum);
            }
            sum = sum.add(&term)?;
            if !nilpotent {
                let next = v * Val::from_integer(k + 1) - bound * Val::from_integer(k);
                if next >= Val::from_integer(target) {
                    return Ok(sum);
                }
            }
            k += 1;
        }
    }
}

fn ilog(p: u64, k: u64) -> i64 {
    let mut n = 0;
    let mut x = k;
    while x >= p {
        x /= p;
        n += 1;
    }
    n
}

/// Block-diagonal sum.
pub fn direct_sum(blocks: &[Matrix]) -> Matrix {
    let field = blocks.iter().find_map(|b| b.field()).expect("nonempty blocks").clone();
    let n: usize = blocks.iter().map(|b| b.rows).sum();
    let m: usize = blocks.iter().map(|b| b.cols).sum();
    let mut out = Matrix::zeros(&field, n, m);
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        for i in 0..b.rows {
            for j in 0..b.cols {
                out[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
        r0 += b.rows;
        c0 += b.cols;
    }
    out
}
