//! Lubin-Tate groups: group law, endomorphisms, logarithm and torsion slopes
//! for the standard and multiplicative lifts over Q_5 and a lift over Q_25.

use senlab::lubin_tate::{lt_build, lt_endo, lt_log, lt_torsion_slopes, LiftKind};
use senlab::padic::{Field, PadicScalar};
use senlab::series::text::format_series;

fn main() -> senlab::Result<()> {
    let k = Field::base(5, 20)?;
    let five = PadicScalar::from_int(&k, 5);
    let mult = lt_build(&k, &five, LiftKind::Multiplicative, None, 8)?;
    println!("multiplicative law: {}", format_series(&mult.law()));
    println!("[2] = {}", format_series(&lt_endo(&mult, &PadicScalar::from_int(&k, 2))?.series));

    let std = lt_build(&k, &five, LiftKind::Standard, None, 12)?;
    println!("standard lift: {}", format_series(&std.lift()));
    println!("log to degree 12 has {} terms", lt_log(&std)?.num_terms());
    for level in 1..=2 {
        for s in lt_torsion_slopes(&std, level)? {
            println!("level {level}: {} torsion points of valuation {}", s.multiplicity, s.slope);
        }
    }

    let q25 = Field::unramified_of_degree(5, 2, 20)?;
    let g = lt_build(&q25, &PadicScalar::from_int(&q25, 5), LiftKind::Standard, None, 6)?;
    for s in lt_torsion_slopes(&g, 1)? {
        println!("over Q_25, q = {}: {} torsion points of valuation {}", g.q(), s.multiplicity, s.slope);
    }
    Ok(())
}
