//! Rebuilds a polynomial orbit from its mixed derivatives: the resummed
//! value matches z_0 and every y_i is killed by nabla.

use senlab::orbit::{reconstruct, OrbitExpansion};
use senlab::padic::{Field, PadicScalar};
use senlab::series::MultiIndex;

fn main() -> senlab::Result<()> {
    let k = Field::base(5, 20)?;
    let int = |n| PadicScalar::from_int(&k, n);
    let coeffs = vec![
        (MultiIndex::new(vec![0, 0]), vec![int(1), int(2)]),
        (MultiIndex::new(vec![1, 0]), vec![int(3), int(0)]),
        (MultiIndex::new(vec![0, 1]), vec![int(0), int(-1)]),
        (MultiIndex::new(vec![1, 1]), vec![int(5), int(7)]),
        (MultiIndex::new(vec![2, 0]), vec![int(1), int(25)]),
    ];
    let z = OrbitExpansion::from_coefficients(&k, 2, 2, 1, 2, coeffs)?;
    let r = reconstruct(&z, None)?;
    println!("working radius {}", r.radius);
    println!("{} pieces y_i", r.y.len());
    println!("resum - z_0 has valuation {}", r.resum_defect(&z)?);
    println!("all y_i annihilated to valuation 18: {}", r.annihilated(&z, 18)?);
    Ok(())
}
