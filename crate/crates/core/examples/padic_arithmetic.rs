//! Fixed-precision arithmetic in Q_5, an unramified extension and a
//! cyclotomic field, with log, exp and rational reconstruction.

use senlab::padic::{pexp, plog, Field, GaloisElement, PadicScalar};

fn main() -> senlab::Result<()> {
    let q5 = Field::base(5, 20)?;
    let x = PadicScalar::from_ratio(&q5, 2, 3);
    let y = PadicScalar::from_int(&q5, 50);
    println!("x = 2/3 = {x}");
    println!("y = 50 has valuation {}", y.valuation());
    println!("x * y = {}, back as a rational: {:?}", &x * &y, (&x * &y).rational_reconstruct().map(|q| q.to_string()));
    println!("1/x = {}", x.inverse()?);

    let t = PadicScalar::from_int(&q5, 5);
    let e = pexp(&t)?;
    println!("exp(5) = {e}");
    println!("log(exp(5)) - 5 has valuation {}", (&plog(&e)? - &t).valuation());

    let q25 = Field::unramified_of_degree(5, 2, 20)?;
    let a = PadicScalar::primitive_element(&q25).expect("extension has a generator");
    let frob = GaloisElement::frobenius(&q25, 1)?;
    println!("Frobenius of the generator of Q_25: {}", frob.act(&a)?);

    let k2 = Field::cyclotomic(5, 2, 20)?;
    let zeta = PadicScalar::primitive_element(&k2).expect("extension has a generator");
    println!("[K_2 : Q_5] = {}, zeta has valuation {}", k2.degree(), (&zeta - &PadicScalar::one(&k2)).valuation());
    let g = GaloisElement::cyclotomic(&k2, 2)?;
    println!("gamma(zeta) = zeta^2: {}", g.act(&zeta)?.agrees_to(&zeta.powu(2), 20));
    Ok(())
}
