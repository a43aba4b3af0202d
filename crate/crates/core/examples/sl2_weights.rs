//! Sym^k representations of sl2: relations, weights, quadratic invariance
//! and isotypic decomposition of a direct sum.

use senlab::padic::{Field, PadicScalar};
use senlab::sampling;
use senlab::sl2::{isotypic_decompose, j_operator_check, quad_invariant_check, symk_matrices, weight_spectrum, SL2Element, Sl2Triple};

fn main() -> senlab::Result<()> {
    let k = Field::base(5, 20)?;
    for kk in [0, 1, 4] {
        let rep = symk_matrices(&k, kk);
        rep.ops.check_relations(20)?;
        println!("Sym^{kk}: weights {:?}", weight_spectrum(&rep.ops.h)?);
    }

    let parts: Vec<Sl2Triple> = [3, 1, 1, 0].iter().map(|&w| symk_matrices(&k, w).ops).collect();
    let sum = Sl2Triple::direct_sum(&parts);
    println!("Sym^3 + 2 Sym^1 + Sym^0 decomposes as {:?}", isotypic_decompose(&sum)?);

    let mut rng = sampling::rng(1);
    let g = SL2Element::random(&mut rng, &k);
    println!("random det-1 element preserves the quadratic form: {}", quad_invariant_check(g.matrix())?);
    println!("J = 4 y^3 [d1, d2] to degree 6: {}", j_operator_check(&k, &PadicScalar::from_int(&k, 2), 6)?);
    Ok(())
}
