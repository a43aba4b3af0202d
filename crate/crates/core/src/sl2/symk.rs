use crate::error::{Error, Result};
use crate::linalg::{direct_sum, Matrix};
use crate::padic::{Field, PadicScalar};
use crate::sampling::{self, SuiteRng};

/// An element of SL_2 over the ring of integers, acting on V = F e1 + F e2
/// by g(e_j) = sum_i g[(i, j)] e_i.
#[derive(Clone, Debug, PartialEq)]
pub struct SL2Element {
    m: Matrix,
}

pub(crate) fn det2(m: &Matrix) -> PadicScalar {
    &(&m[(0, 0)] * &m[(1, 1)]) - &(&m[(0, 1)] * &m[(1, 0)])
}

impl SL2Element {
    pub fn new(m: Matrix) -> Result<Self> {
        if m.rows() != 2 || m.cols() != 2 {
            return Err(Error::ShapeMismatch("SL2 elements are 2x2".into()));
        }
        let one = PadicScalar::one(m.field().expect("2x2"));
        if !det2(&m).agrees_to(&one, m.min_precision()) {
            return Err(Error::NotDetOne);
        }
        Ok(SL2Element { m })
    }

    pub(crate) fn new_unchecked(m: Matrix) -> Self {
        SL2Element { m }
    }

    pub fn from_ints(field: &Field, a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        SL2Element::new(Matrix::from_ints(field, &[&[a, b], &[c, d]]))
    }

    pub fn identity(field: &Field) -> Self {
        SL2Element { m: Matrix::identity(field, 2) }
    }

    /// A random integral element: a a unit, b and c integral, d = (1 + bc)/a.
    pub fn random(rng: &mut SuiteRng, field: &Field) -> Self {
        let a = sampling::unit(rng, field);
        let b = sampling::scalar(rng, field, 0);
        let c = sampling::scalar(rng, field, 0);
        let d = (&PadicScalar::one(field) + &(&b * &c)).try_div(&a).expect("a is a unit");
        SL2Element { m: Matrix::from_rows(vec![vec![a, b], vec![c, d]]).expect("2x2") }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn mul(&self, other: &SL2Element) -> Result<SL2Element> {
        Ok(SL2Element { m: self.m.mul(&other.m)? })
    }
}

/// A representation of sl_2 given by the images of D1, D2 and H.
#[derive(Clone, Debug, PartialEq)]
pub struct Sl2Triple {
    pub d1: Matrix,
    pub d2: Matrix,
    pub h: Matrix,
}

impl Sl2Triple {
    pub fn new(d1: Matrix, d2: Matrix, h: Matrix) -> Result<Self> {
        let n = d1.rows();
        for m in [&d1, &d2, &h] {
            if m.rows() != n || m.cols() != n {
                return Err(Error::ShapeMismatch("D1, D2 and H must be square of one size".into()));
            }
        }
        Ok(Sl2Triple { d1, d2, h })
    }

    pub fn dim(&self) -> usize {
        self.h.rows()
    }

    pub fn field(&self) -> &Field {
        self.h.field().expect("nonempty representation")
    }

    pub fn direct_sum(parts: &[Sl2Triple]) -> Sl2Triple {
        let pick = |f: fn(&Sl2Triple) -> &Matrix| direct_sum(&parts.iter().map(|t| f(t).clone()).collect::<Vec<_>>());
        Sl2Triple { d1: pick(|t| &t.d1), d2: pick(|t| &t.d2), h: pick(|t| &t.h) }
    }

    /// X acting as X x 1 + 1 x X on the tensor product, basis u_i x v_j in
    /// lexicographic order.
    pub fn tensor(&self, other: &Sl2Triple) -> Sl2Triple {
        let field = self.field().clone();
        let ia = Matrix::identity(&field, self.dim());
        let ib = Matrix::identity(&field, other.dim());
        let op = |a: &Matrix, b: &Matrix| kronecker(a, &ib).add(&kronecker(&ia, b)).expect("same shape");
        Sl2Triple { d1: op(&self.d1, &other.d1), d2: op(&self.d2, &other.d2), h: op(&self.h, &other.h) }
    }

    /// Checks [D1, D2] = H, [H, D1] = 2 D1, [H, D2] = -2 D2
    /// to `bound` digits.
    pub fn check_relations(&self, bound: i64) -> Result<()> {
        let two = self.d1.scale(&PadicScalar::from_int(self.field(), 2));
        let minus_two = self.d2.scale(&PadicScalar::from_int(self.field(), -2));
        let checks = [
            ("[D1,D2] = H", self.d1.commutator(&self.d2)?, &self.h),
            ("[H,D1] = 2 D1", self.h.commutator(&self.d1)?, &two),
            ("[H,D2] = -2 D2", self.h.commutator(&self.d2)?, &minus_two),
        ];
        for (name, got, want) in checks {
            if !got.agrees_to(want, bound) {
                return Err(Error::RelationsViolated(name.into()));
            }
        }
        Ok(())
    }
}

/// Kronecker product, (a x b)[(i*rb + k, j*cb + l)] = a[(i, j)] b[(k, l)].
pub fn kronecker(a: &Matrix, b: &Matrix) -> Matrix {
    let field = a.field().expect("nonempty").clone();
    let mut out = Matrix::zeros(&field, a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    out[(i * b.rows() + k, j * b.cols() + l)] = &a[(i, j)] * &b[(k, l)];
                }
            }
        }
    }
    out
}

/// Sym^k V in the basis b_i = e1^(k-i) e2^i, i = 0..=k.
#[derive(Clone, Debug, PartialEq)]
pub struct SymkRep {
    pub k: u32,
    pub ops: Sl2Triple,
}

/// D1 e1 = e2, D2 e2 = e1, H = diag(-1, 1), extended to Sym^k as derivations:
/// D1 b_i = (k-i) b_(i+1), D2 b_i = i b_(i-1), H b_i = (2i-k) b_i.
pub fn symk_matrices(field: &Field, k: u32) -> SymkRep {
    let n = k as usize + 1;
    let mut d1 = Matrix::zeros(field, n, n);
    let mut d2 = Matrix::zeros(field, n, n);
    let mut h = Matrix::zeros(field, n, n);
    for i in 0..n {
        let ii = i as i64;
        let kk = k as i64;
        if i + 1 < n {
            d1[(i + 1, i)] = PadicScalar::from_int(field, kk - ii);
        }
        if i > 0 {
            d2[(i - 1, i)] = PadicScalar::from_int(field, ii);
        }
        h[(i, i)] = PadicScalar::from_int(field, 2 * ii - kk);
    }
    SymkRep { k, ops: Sl2Triple { d1, d2, h } }
}

/// Coefficients of the binary form prod_r (a_r e1 + c_r e2) in the basis e1^(d-i) e2^i.
fn form_product(factors: &[(PadicScalar, PadicScalar)], field: &Field) -> Vec<PadicScalar> {
    let mut out = vec![PadicScalar::one(field)];
    for (a, c) in factors {
        let mut next = vec![PadicScalar::zero(field); out.len() + 1];
        for (i, x) in out.iter().enumerate() {
            next[i] = &next[i] + &(x * a);
            next[i + 1] = &next[i + 1] + &(x * c);
        }
        out = next;
    }
    out
}

impl SymkRep {
    pub fn dim(&self) -> usize {
        self.k as usize + 1
    }

    /// Sym^k(g): column j holds g(e1)^(k-j) g(e2)^j.
    pub fn group_matrix(&self, g: &SL2Element) -> Matrix {
        let m = g.matrix();
        let field = m.field().expect("2x2").clone();
        let n = self.dim();
        let ge1 = (m[(0, 0)].clone(), m[(1, 0)].clone());
        let ge2 = (m[(0, 1)].clone(), m[(1, 1)].clone());
        let mut out = Matrix::zeros(&field, n, n);
        for j in 0..n {
            let mut factors = vec![ge1.clone(); n - 1 - j];
            factors.extend(std::iter::repeat_n(ge2.clone(), j));
            for (i, c) in form_product(&factors, &field).into_iter().enumerate() {
                out[(i, j)] = c;
            }
        }
        out
    }
}
