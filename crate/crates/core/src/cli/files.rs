use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::orbit::{generator_character, AnalyticMatrixAction, ChartFunction};
use crate::padic::text::scalar_from_json;
use crate::padic::{Field, GaloisElement};

/// Action file contents, e.g.
/// `{"p": 5, "radius": 1, "matrix": [["chi^2", "0"], ["0", "chi^2"]]}`.
///
/// Exactly one of `matrix` (chart functions of chi and l = log chi) and
/// `exponential` (a generator theta0, so Mat(g) = exp(l theta0)) is given.
/// `gamma` picks chi(gamma) = 1 + p^radius * gamma.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub p: u64,
    #[serde(default = "default_field")]
    pub field: Value,
    #[serde(default = "one")]
    pub radius: u32,
    #[serde(default)]
    pub matrix: Option<Vec<Vec<Value>>>,
    #[serde(default)]
    pub exponential: Option<Vec<Vec<Value>>>,
    #[serde(default)]
    pub coefficient_action: bool,
    #[serde(default = "one_i64")]
    pub gamma: i64,
}

fn default_field() -> Value {
    Value::String("Qp".into())
}

fn one() -> u32 {
    1
}

fn one_i64() -> i64 {
    1
}

/// A parsed action file ready for the Sen operator.
#[derive(Clone, Debug)]
pub struct LoadedAction {
    pub action: AnalyticMatrixAction,
    pub gamma: GaloisElement,
}

impl ActionSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("action file: {e}")))
    }

    pub fn field(&self, precision: i64) -> Result<Field> {
        match &self.field {
            Value::String(s) if s == "Qp" => Field::base(self.p, precision),
            Value::Object(m) => match m.get("cyclotomic").and_then(Value::as_u64) {
                Some(level) => Field::cyclotomic(self.p, level as u32, precision),
                None => Err(Error::Parse("field object must carry a \"cyclotomic\" level".into())),
            },
            other => Err(Error::Parse(format!("unknown field {other}"))),
        }
    }

    pub fn load(&self, precision: i64) -> Result<LoadedAction> {
        let field = self.field(precision)?;
        let action = match (&self.matrix, &self.exponential) {
            (Some(rows), None) => {
                let entries = rows
                    .iter()
                    .map(|row| row.iter().map(|v| chart_entry(&field, v)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                AnalyticMatrixAction::from_chart(&field, self.radius, entries)?
            }
            (None, Some(rows)) => {
                let rows = rows
                    .iter()
                    .map(|row| row.iter().map(|v| scalar_from_json(&field, v)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                AnalyticMatrixAction::exponential(self.radius, Matrix::from_rows(rows)?)?
            }
            _ => return Err(Error::Parse("give exactly one of \"matrix\" and \"exponential\"".into())),
        }
        .with_coefficient_action(self.coefficient_action);
        let chi = generator_character(&field, self.radius, self.gamma);
        let gamma = GaloisElement::from_character(&field, &chi)?;
        Ok(LoadedAction { action, gamma })
    }
}

fn chart_entry(field: &Field, v: &Value) -> Result<ChartFunction> {
    match v {
        Value::String(s) => ChartFunction::parse(field, s),
        other => Ok(ChartFunction::constant(scalar_from_json(field, other)?)),
    }
}

/// Reads a file, mapping I/O failures to parse errors.
pub fn read_file(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}
