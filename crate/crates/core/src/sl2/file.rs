use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::padic::text::scalar_from_json;
use crate::padic::Field;

use super::symk::Sl2Triple;

/// Representation file contents: `{"dim": n, "D1": [...], "D2": [...], "H": [...]}`
/// with each matrix given as n*n scalars in row-major order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepSpec {
    pub dim: usize,
    #[serde(rename = "D1")]
    pub d1: Vec<Value>,
    #[serde(rename = "D2")]
    pub d2: Vec<Value>,
    #[serde(rename = "H")]
    pub h: Vec<Value>,
}

impl RepSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("representation file: {e}")))
    }

    fn matrix(&self, field: &Field, name: &str, entries: &[Value]) -> Result<Matrix> {
        let n = self.dim;
        if entries.len() != n * n {
            return Err(Error::Parse(format!("{name} has {} entries, expected {}", entries.len(), n * n)));
        }
        let rows = entries
            .chunks(n.max(1))
            .map(|row| row.iter().map(|v| scalar_from_json(field, v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows)
    }

    pub fn build(&self, field: &Field) -> Result<Sl2Triple> {
        if self.dim == 0 {
            return Err(Error::Parse("representation dimension must be positive".into()));
        }
        Sl2Triple::new(self.matrix(field, "D1", &self.d1)?, self.matrix(field, "D2", &self.d2)?, self.matrix(field, "H", &self.h)?)
    }

    pub fn from_triple(t: &Sl2Triple) -> RepSpec {
        let flat = |m: &Matrix| m.entries().iter().map(|x| Value::String(crate::padic::text::format_scalar(x))).collect();
        RepSpec { dim: t.dim(), d1: flat(&t.d1), d2: flat(&t.d2), h: flat(&t.h) }
    }
}
