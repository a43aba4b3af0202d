//! Orbit expansions of the standard models and invariance of their C-map
//! images under sampled group elements.

use senlab::orbit::{check_cmap_invariance, cmap, generator_character, standard_models, OrbitExpansion};
use senlab::padic::Field;
use senlab::series::text::format_series;

fn main() -> senlab::Result<()> {
    let k = Field::base(5, 20)?;
    let chis: Vec<_> = [1, 2, 3, 4, 6, -1, 101].iter().map(|&u| generator_character(&k, 1, u)).collect();
    for model in standard_models(&k, 1, 2) {
        let report = check_cmap_invariance(&model.action, &model.w, &chis, 12, 18)?;
        println!("{:<14} defect {:<6} passed {}", model.name, report.defect.to_string(), report.passed);
    }

    let additive = &standard_models(&k, 1, 2)[1];
    let orbit = OrbitExpansion::from_action(&additive.action, &additive.w, 4)?;
    for (i, c) in cmap(&orbit)?.iter().enumerate() {
        println!("C(w)_{i} = {}", format_series(c));
    }
    Ok(())
}
