//! Sen operators of analytic actions: a character, a unipotent block and a
//! generic exponential action, with kernels and the iota expansion.

use senlab::linalg::Matrix;
use senlab::orbit::{generator_character, AnalyticMatrixAction};
use senlab::padic::{Field, GaloisElement, PadicScalar};
use senlab::sen::{iota, sen_kernel, sen_operator, sen_spectrum_symk};

fn short(x: &PadicScalar) -> String {
    x.rational_reconstruct().map(|q| q.to_string()).unwrap_or_else(|| x.to_string())
}

fn show(m: &Matrix) -> String {
    let rows: Vec<String> = m.to_rows().iter().map(|r| r.iter().map(short).collect::<Vec<_>>().join(" ")).collect();
    format!("[{}]", rows.join("; "))
}

fn main() -> senlab::Result<()> {
    let k = Field::base(5, 20)?;
    let gamma = GaloisElement::from_character(&k, &generator_character(&k, 1, 1))?;

    let chi2 = sen_operator(&AnalyticMatrixAction::character(&k, 1, 2, 2), &gamma)?;
    println!("character s=2: Theta = {}, spectrum {:?}", show(&chi2.theta), chi2.spectrum);

    let uni = sen_operator(&AnalyticMatrixAction::unipotent(&k, 1), &gamma)?;
    let kernel: Vec<Vec<String>> = sen_kernel(&uni)?.iter().map(|v| v.iter().map(short).collect()).collect();
    println!("unipotent: Theta = {}, kernel {kernel:?}", show(&uni.theta));

    let theta0 = Matrix::from_ints(&k, &[&[0, 5, 0], &[0, 1, 0], &[25, 0, -1]]);
    let exp = sen_operator(&AnalyticMatrixAction::exponential(1, theta0.clone())?, &gamma)?;
    println!("exponential action recovers its generator: {}", exp.theta.agrees_to(&theta0, 18));
    let d = Matrix::identity(&k, 3);
    let e = iota(&d, &exp, 3)?;
    for (j, c) in e.coefficients().iter().enumerate() {
        println!("  iota u^{j}: {}", show(c));
    }

    let r = sen_spectrum_symk(&k, &PadicScalar::from_int(&k, 2), 3)?;
    println!("Sym^3 with s=2: weights {:?}, matches 2H: {}", r.weights, r.matches_expected);
    Ok(())
}
