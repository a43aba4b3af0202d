use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::error::Result;
use crate::linalg::Matrix;
use crate::lubin_tate::{lt_endo, lt_log, lt_torsion_slopes, LTModelSpec, Slope};
use crate::padic::text::format_scalar;
use crate::padic::{Field, PadicScalar};
use crate::sen::{iota, sen_kernel, sen_operator};
use crate::series::text::format_series;
use crate::sl2::{isotypic_decompose, weight_spectrum, RepSpec};

use super::files::ActionSpec;
use super::report::{SuiteParams, SuiteReport};
use super::suites::{run_suite, suite_names};
use super::Rendered;

/// A scalar as a short rational when one represents it, else in digit form.
pub fn display_scalar(x: &PadicScalar) -> String {
    if x.is_zero() {
        return "0".into();
    }
    match x.rational_reconstruct() {
        Some(q) => q.to_string(),
        None => format_scalar(x),
    }
}

fn display_matrix(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(display_scalar).collect()).collect()
}

fn matrix_text(m: &[Vec<String>]) -> String {
    m.iter().map(|r| format!("  [{}]", r.join(", "))).collect::<Vec<_>>().join("\n")
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub params: SuiteParams,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

pub(super) fn verify(selector: &str, params: &SuiteParams, timing: bool) -> Result<Rendered> {
    let mut suites = Vec::new();
    for name in suite_names(selector)? {
        let start = Instant::now();
        let mut r = run_suite(name, params)?;
        if timing {
            r.wall_time_ms = Some(start.elapsed().as_millis() as u64);
        }
        suites.push(r);
    }
    let passed = suites.iter().all(SuiteReport::passed);
    let report = VerifyReport { params: params.clone(), suites, passed };
    let mut text = String::new();
    for s in &report.suites {
        let status = if s.passed() { "pass" } else { "FAIL" };
        let _ = write!(text, "{status} {}: {} cases, {} failures, {} skipped", s.suite, s.cases, s.failures.len(), s.skipped.len());
        if let Some(ms) = s.wall_time_ms {
            let _ = write!(text, " ({ms} ms)");
        }
        text.push('\n');
        for f in &s.failures {
            let _ = writeln!(text, "  {}: expected {}, got {} (inputs {})", f.case, f.expected, f.got, f.inputs);
        }
    }
    Ok(Rendered { json: serde_json::to_value(&report).expect("serializable"), text, exit_code: if passed { 0 } else { 1 } })
}

#[derive(Clone, Debug, Serialize)]
pub struct EndoSample {
    pub a: String,
    pub series: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelSlopes {
    pub level: u32,
    pub slopes: Vec<Slope>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LtReport {
    pub p: u64,
    pub q: u64,
    #[serde(rename = "D")]
    pub degree: u32,
    pub uniformizer: String,
    pub lift: String,
    pub law: String,
    pub logarithm: String,
    pub endomorphisms: Vec<EndoSample>,
    pub torsion: Vec<LevelSlopes>,
}

/// Builds the model and reports its law, a few [a], the logarithm and the
/// torsion slopes at levels 1..=level.
pub fn run_lt(spec: &LTModelSpec, level: u32, precision: i64, degree: u32) -> Result<LtReport> {
    let g = spec.build(precision, degree)?;
    let k = g.field().clone();
    let samples = [PadicScalar::from_int(&k, 2), PadicScalar::from_int(&k, -1), g.uniformizer().clone()];
    let endomorphisms = samples
        .iter()
        .map(|a| Ok(EndoSample { a: display_scalar(a), series: format_series(&lt_endo(&g, a)?.series) }))
        .collect::<Result<Vec<_>>>()?;
    let torsion = (1..=level).map(|n| Ok(LevelSlopes { level: n, slopes: lt_torsion_slopes(&g, n)? })).collect::<Result<Vec<_>>>()?;
    Ok(LtReport {
        p: k.p(),
        q: g.q(),
        degree: g.degree(),
        uniformizer: display_scalar(g.uniformizer()),
        lift: format_series(&g.lift()),
        law: format_series(&g.law()),
        logarithm: format_series(&lt_log(&g)?),
        endomorphisms,
        torsion,
    })
}

impl LtReport {
    pub fn render(&self) -> Rendered {
        let mut t = String::new();
        let _ = writeln!(t, "Lubin-Tate group over a field with q = {}, pi = {}, to degree {}", self.q, self.uniformizer, self.degree);
        let _ = writeln!(t, "lift f = {}", self.lift);
        let _ = writeln!(t, "law F = {}", self.law);
        let _ = writeln!(t, "log = {}", self.logarithm);
        for e in &self.endomorphisms {
            let _ = writeln!(t, "[{}] = {}", e.a, e.series);
        }
        for l in &self.torsion {
            let parts: Vec<String> = l.slopes.iter().map(|s| format!("{} x{}", s.slope, s.multiplicity)).collect();
            let _ = writeln!(t, "level {} slopes: {}", l.level, parts.join(", "));
        }
        Rendered { text: t, json: serde_json::to_value(self).expect("serializable"), exit_code: 0 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SenReport {
    pub p: u64,
    pub radius: u32,
    pub chi: String,
    pub theta: Vec<Vec<String>>,
    pub spectrum: Option<Vec<i64>>,
    pub kernel: Vec<Vec<String>>,
    /// Coefficient matrices of exp(-u Theta) in u, constant term first.
    pub iota: Vec<Vec<Vec<String>>>,
}

/// Theta, its spectrum and kernel, and exp(-u Theta) to degree D.
pub fn run_sen(spec: &ActionSpec, precision: i64, degree: u32) -> Result<SenReport> {
    let loaded = spec.load(precision)?;
    let desc = sen_operator(&loaded.action, &loaded.gamma)?;
    let field: Field = loaded.action.field().clone();
    let id = Matrix::identity(&field, loaded.action.dim());
    let expansion = iota(&id, &desc, degree)?;
    Ok(SenReport {
        p: field.p(),
        radius: desc.radius,
        chi: display_scalar(loaded.gamma.chi().expect("built from a character")),
        theta: display_matrix(&desc.theta),
        spectrum: desc.spectrum.clone(),
        kernel: sen_kernel(&desc)?.iter().map(|v| v.iter().map(display_scalar).collect()).collect(),
        iota: expansion.coefficients().iter().map(display_matrix).collect(),
    })
}

impl SenReport {
    pub fn render(&self) -> Rendered {
        let mut t = String::new();
        let _ = writeln!(t, "Sen operator at radius {} from chi(gamma) = {}:", self.radius, self.chi);
        let _ = writeln!(t, "{}", matrix_text(&self.theta));
        match &self.spectrum {
            Some(s) => {
                let _ = writeln!(t, "spectrum: {s:?}");
            }
            None => t.push_str("spectrum: not integral\n"),
        }
        let _ = writeln!(t, "kernel basis: {}", self.kernel.iter().map(|v| format!("({})", v.join(", "))).collect::<Vec<_>>().join(", "));
        for (j, c) in self.iota.iter().enumerate() {
            let _ = writeln!(t, "iota u^{j}:\n{}", matrix_text(c));
        }
        Rendered { text: t, json: serde_json::to_value(self).expect("serializable"), exit_code: 0 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Sl2Report {
    pub dim: usize,
    pub weights: Vec<i64>,
    /// Highest weights of the irreducible summands, descending.
    pub highest_weights: Vec<u32>,
}

pub fn run_sl2_decompose(spec: &RepSpec, field: &Field) -> Result<Sl2Report> {
    let rep = spec.build(field)?;
    let highest_weights = isotypic_decompose(&rep)?;
    Ok(Sl2Report { dim: rep.dim(), weights: weight_spectrum(&rep.h)?, highest_weights })
}

impl Sl2Report {
    pub fn render(&self) -> Rendered {
        let parts: Vec<String> = self.highest_weights.iter().map(|k| format!("Sym^{k}")).collect();
        let text = format!("dimension {}\nweights {:?}\ndecomposition {}\n", self.dim, self.weights, parts.join(" + "));
        Rendered { text, json: serde_json::to_value(self).expect("serializable"), exit_code: 0 }
    }
}
