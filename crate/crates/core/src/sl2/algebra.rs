use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::padic::{Field, PadicScalar};

/// Polynomial in x1, x2, keyed by exponent pairs.
pub type Poly2 = BTreeMap<(u32, u32), PadicScalar>;

fn poly_add(a: &Poly2, b: &Poly2) -> Poly2 {
    let mut out = a.clone();
    for (k, c) in b {
        let e = out.entry(*k).or_insert_with(|| PadicScalar::zero(c.field()));
        *e = &*e + c;
    }
    out
}

fn poly_scale(a: &Poly2, c: &PadicScalar) -> Poly2 {
    a.iter().map(|(k, x)| (*k, x * c)).collect()
}

fn poly_mul(a: &Poly2, b: &Poly2) -> Poly2 {
    let mut out = Poly2::new();
    for (&(i, j), x) in a {
        for (&(k, l), y) in b {
            let t = x * y;
            let e = out.entry((i + k, j + l)).or_insert_with(|| PadicScalar::zero(t.field()));
            *e = &*e + &t;
        }
    }
    out
}

fn poly_partial(a: &Poly2, var: usize) -> Poly2 {
    a.iter()
        .filter_map(|(&(i, j), c)| {
            let e = if var == 0 { i } else { j };
            (e > 0).then(|| {
                let k = if var == 0 { (i - 1, j) } else { (i, j - 1) };
                (k, c.scale_int(e as i64))
            })
        })
        .collect()
}

/// An element (a + y b) / u^den of the coordinate ring
/// F[x1, x2, y] / (y^2 - x1 x2 - delta^2), localized at u = y^2.
/// Products reduce y^2 to x1 x2 + delta^2 immediately, so a and b are
/// polynomials in x1, x2 only.
#[derive(Clone, Debug)]
pub struct CoordinateAlgebraElement {
    a: Poly2,
    b: Poly2,
    den: u32,
}

/// The ring together with its fixed constant delta.
#[derive(Clone, Debug)]
pub struct CoordinateAlgebra {
    field: Field,
    delta: PadicScalar,
    u: Poly2,
}

/// A derivation given by its values on x1, x2, y (delta is a constant).
#[derive(Clone, Debug)]
pub struct Derivation {
    pub dx1: CoordinateAlgebraElement,
    pub dx2: CoordinateAlgebraElement,
    pub dy: CoordinateAlgebraElement,
}

impl CoordinateAlgebraElement {
    pub fn numerator(&self) -> (&Poly2, &Poly2) {
        (&self.a, &self.b)
    }

    /// Exponent of u = y^2 in the denominator.
    pub fn denominator_exponent(&self) -> u32 {
        self.den
    }
}

impl CoordinateAlgebra {
    pub fn new(field: &Field, delta: &PadicScalar) -> Result<Self> {
        let delta = delta.embed(field)?;
        if !delta.is_unit() {
            return Err(Error::NonUnitDelta);
        }
        let mut u = Poly2::new();
        u.insert((1, 1), PadicScalar::one(field));
        u.insert((0, 0), &delta * &delta);
        Ok(CoordinateAlgebra { field: field.clone(), delta, u })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn delta(&self) -> &PadicScalar {
        &self.delta
    }

    fn elem(&self, a: Poly2, b: Poly2, den: u32) -> CoordinateAlgebraElement {
        CoordinateAlgebraElement { a, b, den }
    }

    pub fn zero(&self) -> CoordinateAlgebraElement {
        self.elem(Poly2::new(), Poly2::new(), 0)
    }

    pub fn constant(&self, c: &PadicScalar) -> CoordinateAlgebraElement {
        self.elem(Poly2::from([((0, 0), c.clone())]), Poly2::new(), 0)
    }

    pub fn x1(&self) -> CoordinateAlgebraElement {
        self.elem(Poly2::from([((1, 0), PadicScalar::one(&self.field))]), Poly2::new(), 0)
    }

    pub fn x2(&self) -> CoordinateAlgebraElement {
        self.elem(Poly2::from([((0, 1), PadicScalar::one(&self.field))]), Poly2::new(), 0)
    }

    pub fn y(&self) -> CoordinateAlgebraElement {
        self.elem(Poly2::new(), Poly2::from([((0, 0), PadicScalar::one(&self.field))]), 0)
    }

    /// x1^a x2^b y^c in canonical form.
    pub fn monomial(&self, a: u32, b: u32, c: u32) -> CoordinateAlgebraElement {
        let mut p = Poly2::from([((a, b), PadicScalar::one(&self.field))]);
        for _ in 0..c / 2 {
            p = poly_mul(&p, &self.u);
        }
        if c.is_multiple_of(2) {
            self.elem(p, Poly2::new(), 0)
        } else {
            self.elem(Poly2::new(), p, 0)
        }
    }

    fn u_pow(&self, e: u32) -> Poly2 {
        let mut p = Poly2::from([((0, 0), PadicScalar::one(&self.field))]);
        for _ in 0..e {
            p = poly_mul(&p, &self.u);
        }
        p
    }

    fn with_den(&self, f: &CoordinateAlgebraElement, den: u32) -> (Poly2, Poly2) {
        let up = self.u_pow(den - f.den);
        (poly_mul(&f.a, &up), poly_mul(&f.b, &up))
    }

    pub fn add(&self, f: &CoordinateAlgebraElement, g: &CoordinateAlgebraElement) -> CoordinateAlgebraElement {
        let den = f.den.max(g.den);
        let (fa, fb) = self.with_den(f, den);
        let (ga, gb) = self.with_den(g, den);
        self.elem(poly_add(&fa, &ga), poly_add(&fb, &gb), den)
    }

    pub fn scale(&self, f: &CoordinateAlgebraElement, c: &PadicScalar) -> CoordinateAlgebraElement {
        self.elem(poly_scale(&f.a, c), poly_scale(&f.b, c), f.den)
    }

    pub fn sub(&self, f: &CoordinateAlgebraElement, g: &CoordinateAlgebraElement) -> CoordinateAlgebraElement {
        self.add(f, &self.scale(g, &PadicScalar::from_int(&self.field, -1)))
    }

    pub fn mul(&self, f: &CoordinateAlgebraElement, g: &CoordinateAlgebraElement) -> CoordinateAlgebraElement {
        let a = poly_add(&poly_mul(&f.a, &g.a), &poly_mul(&self.u, &poly_mul(&f.b, &g.b)));
        let b = poly_add(&poly_mul(&f.a, &g.b), &poly_mul(&f.b, &g.a));
        self.elem(a, b, f.den + g.den)
    }

    /// f / y = (u b + y a) / u^(den+1).
    pub fn div_y(&self, f: &CoordinateAlgebraElement) -> CoordinateAlgebraElement {
        self.elem(poly_mul(&self.u, &f.b), f.a.clone(), f.den + 1)
    }

    /// Whether f vanishes to `bound` digits.
    pub fn is_zero_mod(&self, f: &CoordinateAlgebraElement, bound: i64) -> bool {
        f.a.values().chain(f.b.values()).all(|c| c.is_zero_mod(bound))
    }

    pub fn agrees_to(&self, f: &CoordinateAlgebraElement, g: &CoordinateAlgebraElement, bound: i64) -> bool {
        self.is_zero_mod(&self.sub(f, g), bound)
    }

    fn poly_elem(&self, p: Poly2) -> CoordinateAlgebraElement {
        self.elem(p, Poly2::new(), 0)
    }

    /// D(P) for a polynomial P in x1, x2.
    fn derive_poly(&self, d: &Derivation, p: &Poly2) -> CoordinateAlgebraElement {
        let t1 = self.mul(&self.poly_elem(poly_partial(p, 0)), &d.dx1);
        let t2 = self.mul(&self.poly_elem(poly_partial(p, 1)), &d.dx2);
        self.add(&t1, &t2)
    }

    /// Applies a derivation, using D(1/u^m) = -m D(u) / u^(m+1).
    pub fn apply(&self, d: &Derivation, f: &CoordinateAlgebraElement) -> CoordinateAlgebraElement {
        let num = self.elem(f.a.clone(), f.b.clone(), 0);
        let da = self.derive_poly(d, &f.a);
        let db = self.derive_poly(d, &f.b);
        let b_elem = self.poly_elem(f.b.clone());
        let dnum = self.add(&da, &self.add(&self.mul(&d.dy, &b_elem), &self.mul(&self.y(), &db)));
        let mut out = dnum;
        out.den += f.den;
        if f.den > 0 {
            let du = self.add(&self.mul(&d.dx1, &self.x2()), &self.mul(&self.x1(), &d.dx2));
            let mut t = self.scale(&self.mul(&num, &du), &PadicScalar::from_int(&self.field, -(f.den as i64)));
            t.den += f.den + 1;
            out = self.add(&out, &t);
        }
        out
    }

    /// D1(x1) = 2y, D1(x2) = 0, D1(y) = x2.
    pub fn d1(&self) -> Derivation {
        let two_y = self.scale(&self.y(), &PadicScalar::from_int(&self.field, 2));
        Derivation { dx1: two_y, dx2: self.zero(), dy: self.x2() }
    }

    /// D2(x1) = 0, D2(x2) = 2y, D2(y) = x1.
    pub fn d2(&self) -> Derivation {
        let two_y = self.scale(&self.y(), &PadicScalar::from_int(&self.field, 2));
        Derivation { dx1: self.zero(), dx2: two_y, dy: self.x1() }
    }

    /// H = [D1, D2] applied to f.
    pub fn h(&self, f: &CoordinateAlgebraElement) -> CoordinateAlgebraElement {
        let (d1, d2) = (self.d1(), self.d2());
        self.sub(&self.apply(&d1, &self.apply(&d2, f)), &self.apply(&d2, &self.apply(&d1, f)))
    }

    /// partial_i = D_i / 2y, for i in {1, 2}.
    pub fn partial(&self, i: usize, f: &CoordinateAlgebraElement) -> Result<CoordinateAlgebraElement> {
        let d = match i {
            1 => self.d1(),
            2 => self.d2(),
            _ => return Err(Error::BadDirection { direction: i, dim: 2 }),
        };
        let half = PadicScalar::from_ratio(&self.field, 1, 2);
        Ok(self.scale(&self.div_y(&self.apply(&d, f)), &half))
    }

    /// J = x1 D1 - x2 D2 + y H.
    pub fn j(&self, f: &CoordinateAlgebraElement) -> CoordinateAlgebraElement {
        let a = self.mul(&self.x1(), &self.apply(&self.d1(), f));
        let b = self.mul(&self.x2(), &self.apply(&self.d2(), f));
        let c = self.mul(&self.y(), &self.h(f));
        self.add(&self.sub(&a, &b), &c)
    }

    /// 4 y^3 (partial_1 partial_2 - partial_2 partial_1).
    pub fn curvature(&self, f: &CoordinateAlgebraElement) -> Result<CoordinateAlgebraElement> {
        let a = self.partial(1, &self.partial(2, f)?)?;
        let b = self.partial(2, &self.partial(1, f)?)?;
        let y3 = self.monomial(0, 0, 3);
        Ok(self.scale(&self.mul(&y3, &self.sub(&a, &b)), &PadicScalar::from_int(&self.field, 4)))
    }
}

/// Checks J = 4 y^3 [partial_1, partial_2] on every x1^a x2^b y^c with
/// a + b + c <= max_degree, to N - 2 digits.
pub fn j_operator_check(field: &Field, delta: &PadicScalar, max_degree: u32) -> Result<bool> {
    if field.p() == 2 {
        return Err(Error::EvenPrimeUnsupported);
    }
    let alg = CoordinateAlgebra::new(field, delta)?;
    let bound = field.precision() - 2;
    for a in 0..=max_degree {
        for b in 0..=max_degree - a {
            for c in 0..=max_degree - a - b {
                let f = alg.monomial(a, b, c);
                if !alg.agrees_to(&alg.j(&f), &alg.curvature(&f)?, bound) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
