//! Drives the report layer from library code: a verify run and the Sen and
//! Lubin-Tate reports for the bundled data files.

use senlab::cli::{run_lt, run_sen, run_verify, ActionSpec, SuiteParams};
use senlab::lubin_tate::LTModelSpec;

fn data(name: &str) -> String {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name);
    std::fs::read_to_string(path).expect("bundled data file")
}

fn main() -> senlab::Result<()> {
    for r in run_verify("identities", &SuiteParams::default())? {
        println!("{}: {} cases, {} failures", r.suite, r.cases, r.failures.len());
    }
    let sen = run_sen(&ActionSpec::parse(&data("action_unipotent.json"))?, 20, 2)?;
    println!("unipotent Theta {:?}, kernel {:?}", sen.theta, sen.kernel);
    let lt = run_lt(&LTModelSpec::parse(&data("lt_standard_q5.json"))?, 2, 20, 12)?;
    for l in &lt.torsion {
        for s in &l.slopes {
            println!("level {}: slope {} x{}", l.level, s.slope, s.multiplicity);
        }
    }
    Ok(())
}
