use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::error::Result;
use crate::padic::{Val, Valuation};

/// Flags shared by every suite.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteParams {
    pub p: u64,
    #[serde(rename = "N")]
    pub precision: i64,
    #[serde(rename = "D")]
    pub degree: u32,
    pub seed: u64,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { p: 5, precision: 20, degree: 12, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub case: String,
    pub inputs: Value,
    pub expected: String,
    pub got: String,
    /// Valuation of the discrepancy, when the check is a valuation bound.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discrepancy: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub skipped: Vec<String>,
    /// Only filled in on request, so that reports stay reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Result of one case.
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Pass,
    Fail { expected: String, got: String, discrepancy: Option<String> },
    Skip(String),
}

impl Outcome {
    pub fn expect_eq<T: std::fmt::Debug + PartialEq>(expected: T, got: T) -> Outcome {
        if expected == got {
            Outcome::Pass
        } else {
            Outcome::Fail { expected: format!("{expected:?}"), got: format!("{got:?}"), discrepancy: None }
        }
    }

    /// Pass when `defect` (the valuation of a difference) is at least `bound`.
    pub fn expect_vanishing(defect: Valuation, bound: i64) -> Outcome {
        if defect.is_at_least(Val::from_integer(bound)) {
            Outcome::Pass
        } else {
            Outcome::Fail { expected: format!("valuation >= {bound}"), got: defect.to_string(), discrepancy: Some(defect.to_string()) }
        }
    }

    pub fn expect(ok: bool, what: &str) -> Outcome {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail { expected: what.to_string(), got: "false".into(), discrepancy: None }
        }
    }

    /// The first failing outcome, or Pass.
    pub fn all(outcomes: impl IntoIterator<Item = Outcome>) -> Outcome {
        outcomes.into_iter().find(|o| !matches!(o, Outcome::Pass)).unwrap_or(Outcome::Pass)
    }
}

type CaseFn = Box<dyn Fn() -> Result<Outcome> + Send + Sync>;

pub struct Case {
    pub name: String,
    pub inputs: Value,
    run: CaseFn,
}

impl Case {
    pub fn new(name: impl Into<String>, inputs: Value, run: impl Fn() -> Result<Outcome> + Send + Sync + 'static) -> Case {
        Case { name: name.into(), inputs, run: Box::new(run) }
    }
}

/// Runs the cases in parallel and assembles the report in case order.
pub fn run_cases(suite: &str, cases: Vec<Case>) -> SuiteReport {
    let outcomes: Vec<Outcome> = cases
        .par_iter()
        .map(|c| match (c.run)() {
            Ok(o) => o,
            Err(e) => Outcome::Fail { expected: "no error".into(), got: e.to_string(), discrepancy: None },
        })
        .collect();
    let mut failures = Vec::new();
    let mut skipped = Vec::new();
    for (c, o) in cases.iter().zip(outcomes) {
        match o {
            Outcome::Pass => {}
            Outcome::Skip(why) => skipped.push(format!("{}: {why}", c.name)),
            Outcome::Fail { expected, got, discrepancy } => {
                failures.push(Failure { case: c.name.clone(), inputs: c.inputs.clone(), expected, got, discrepancy })
            }
        }
    }
    SuiteReport { suite: suite.into(), cases: cases.len(), failures, skipped, wall_time_ms: None }
}
