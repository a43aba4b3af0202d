//! Normalized traces down the cyclotomic tower K_3 / K_2 / K_1 / Q_5.

use senlab::padic::{normalized_trace, Field, GaloisElement, PadicScalar};

/// Exponents j with a nonzero zeta^j coordinate.
fn support(x: &PadicScalar) -> Vec<usize> {
    x.unit_coords().iter().enumerate().filter(|(_, c)| **c != 0.into()).map(|(j, _)| j).collect()
}

fn main() -> senlab::Result<()> {
    let k3 = Field::cyclotomic(5, 3, 20)?;
    let zeta = PadicScalar::primitive_element(&k3).expect("extension has a generator");
    let third = PadicScalar::from_ratio(&k3, 1, 3);
    let x = &(&(&zeta + &zeta.powu(5)) + &zeta.powu(50)) + &third;
    println!("x = zeta + zeta^5 + zeta^50 + 1/3 has support {:?}", support(&x));
    for n in (0..=3).rev() {
        println!("R_{n}(x) has support {:?}", support(&normalized_trace(&x, n)?));
    }
    let r0 = normalized_trace(&x, 0)?;
    println!("R_0(x) = 1/3 - 1/4: {}", r0.agrees_to(&PadicScalar::from_ratio(&k3, 1, 12), 18));
    let r1 = normalized_trace(&x, 1)?;
    println!("R_1 R_2 = R_1: {}", normalized_trace(&normalized_trace(&x, 2)?, 1)?.agrees_to(&r1, 18));
    let g = GaloisElement::cyclotomic(&k3, 7)?;
    println!("R_1 commutes with zeta -> zeta^7: {}", normalized_trace(&g.act(&x)?, 1)?.agrees_to(&g.act(&r1)?, 18));
    Ok(())
}
