//! Gauss norms of radius-indexed series: submultiplicativity, monotonicity
//! in the radius, and inversion of a unit series.

use senlab::padic::Field;
use senlab::sampling;
use senlab::series::text::{format_series, parse_series};
use senlab::series::RadiusIndexedSeries;

fn main() -> senlab::Result<()> {
    let k = Field::base(5, 20)?;
    let f = parse_series(&k, 2, 1, 6, "1 + 5 * T1 + T1 T2^2 + 25 * T2^3")?;
    println!("f = {}", format_series(&f));
    for m in 1..=4 {
        let n = f.gauss_norm(m)?;
        println!("  |f|_{m}: valuation {} attained at {}", n.value, n.attained_at);
    }

    let mut rng = sampling::rng(7);
    let g = sampling::series(&mut rng, &k, 2, 1, 6, 0.5, 0);
    let fg = f.mul(&g)?;
    println!("v(f) + v(g) = {} + {}, v(fg) = {}", f.norm().value, g.norm().value, fg.norm().value);

    let inv = f.invert()?;
    let one = RadiusIndexedSeries::one(&k, 2, 1, 6)?;
    let defect = f.mul(&inv)?.sub(&one)?;
    println!("f * invert(f) - 1 vanishes to valuation 18: {}", defect.is_zero_mod(18));
    Ok(())
}
