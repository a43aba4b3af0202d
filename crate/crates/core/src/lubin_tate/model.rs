use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::padic::text::scalar_from_json;
use crate::padic::Field;

use super::group::{lt_build, LTFormalGroup, LiftKind};

/// Model file contents, e.g.
/// `{"p":5,"F":"Qp","pi":"5","lift":"standard","D":12}`.
/// `F` is `"Qp"`, `"Qq"` together with a residue degree `"f"`, or
/// `{"unramified": [c0, c1, ..., 1]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LTModelSpec {
    pub p: u64,
    #[serde(rename = "F", default = "default_field")]
    pub field: Value,
    #[serde(default)]
    pub f: Option<u32>,
    #[serde(default)]
    pub pi: Option<Value>,
    #[serde(default = "default_lift")]
    pub lift: LiftKind,
    #[serde(rename = "D", default)]
    pub degree: Option<u32>,
}

fn default_field() -> Value {
    Value::String("Qp".into())
}

fn default_lift() -> LiftKind {
    LiftKind::Standard
}

impl LTModelSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("model file: {e}")))
    }

    pub fn base_field(&self, precision: i64) -> Result<Field> {
        match &self.field {
            Value::String(s) if s == "Qp" => Field::base(self.p, precision),
            Value::String(s) if s == "Qq" => Field::unramified_of_degree(self.p, self.f.unwrap_or(1), precision),
            Value::Object(m) => match m.get("unramified") {
                Some(Value::Array(cs)) => {
                    let poly = cs
                        .iter()
                        .map(|c| c.as_i64().ok_or_else(|| Error::Parse("polynomial coefficients must be integers".into())))
                        .collect::<Result<Vec<_>>>()?;
                    Field::unramified(self.p, poly, precision)
                }
                _ => Err(Error::Parse("field object must carry an \"unramified\" coefficient list".into())),
            },
            other => Err(Error::Parse(format!("unknown field {other}"))),
        }
    }

    /// Builds the group; `default_degree` applies when the file omits D.
    pub fn build(&self, precision: i64, default_degree: u32) -> Result<LTFormalGroup> {
        let field = self.base_field(precision)?;
        let pi = match &self.pi {
            Some(v) => scalar_from_json(&field, v)?,
            None => crate::padic::PadicScalar::from_int(&field, self.p as i64),
        };
        lt_build(&field, &pi, self.lift.clone(), None, self.degree.unwrap_or(default_degree))
    }
}
