//! Fixed points of a topological generator on K_1[u] of degree D: the
//! Q_5-dimension stays at [K_1 : Q_5] for every D.

use senlab::orbit::{fixed_space_dimension, generator_character};
use senlab::padic::{Field, GaloisElement};

fn main() -> senlab::Result<()> {
    let k1 = Field::cyclotomic(5, 1, 20)?;
    let g = GaloisElement::from_character(&k1, &generator_character(&k1, 1, 2))?;
    println!("[K_1 : Q_5] = {}", k1.degree());
    for d in 1..=6 {
        println!("D = {d}: fixed space of dimension {}", fixed_space_dimension(&g, 1, d)?);
    }
    Ok(())
}
