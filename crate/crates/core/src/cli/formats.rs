//! JSON formats shared by every verb.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

use crate::error::{Error, Result};
use crate::exact_algebra::{check_modulus, IntMatrix, ModMatrix, PolarizedForm};
use crate::symplectic_groups::{BoundarySpec, CongruencePattern};

/// Version of every JSON document this crate emits.
pub const SCHEMA_VERSION: &str = "1.0";

/// `{"dim": d, "modulus": null | n, "entries": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    #[serde(default)]
    pub modulus: Option<u64>,
    pub entries: Vec<Vec<Number>>,
}

/// Either kind of matrix, as read from JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyMatrix {
    Int(IntMatrix),
    Mod(ModMatrix),
}

fn big(n: &Number) -> Result<BigInt> {
    BigInt::from_str(&n.to_string()).map_err(|_| Error::Input(format!("entry {n} is not an integer")))
}

fn number(x: &BigInt) -> Number {
    Number::from_string_unchecked(x.to_string())
}

impl MatrixJson {
    pub fn from_int(m: &IntMatrix) -> Self {
        MatrixJson {
            dim: m.rows(),
            modulus: None,
            entries: (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| number(m.get(i, j))).collect())
                .collect(),
        }
    }

    pub fn from_mod(m: &ModMatrix) -> Self {
        let d = m.dim();
        MatrixJson {
            dim: d,
            modulus: Some(u64::from(m.modulus())),
            entries: (0..d)
                .map(|i| (0..d).map(|j| Number::from(m.get(i, j))).collect())
                .collect(),
        }
    }

    pub fn to_any(&self) -> Result<AnyMatrix> {
        if self.entries.len() != self.dim || self.entries.iter().any(|r| r.len() != self.dim) {
            return Err(Error::Input(format!(
                "matrix entries do not form a {0}x{0} array",
                self.dim
            )));
        }
        let rows: Vec<Vec<BigInt>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(big).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let m = IntMatrix::from_rows(&rows)?;
        match self.modulus {
            None => Ok(AnyMatrix::Int(m)),
            Some(n) => Ok(AnyMatrix::Mod(crate::exact_algebra::reduce_mod(&m, n)?)),
        }
    }

    pub fn to_int(&self) -> Result<IntMatrix> {
        match self.to_any()? {
            AnyMatrix::Int(m) => Ok(m),
            AnyMatrix::Mod(m) => Ok(m.lift()),
        }
    }

    /// Reduces mod `n`; a matrix that carries its own modulus must agree.
    pub fn to_mod(&self, n: u64) -> Result<ModMatrix> {
        check_modulus(n)?;
        match self.to_any()? {
            AnyMatrix::Int(m) => crate::exact_algebra::reduce_mod(&m, n),
            AnyMatrix::Mod(m) if u64::from(m.modulus()) == n => Ok(m),
            AnyMatrix::Mod(m) => Err(Error::Input(format!(
                "matrix has modulus {}, expected {n}",
                m.modulus()
            ))),
        }
    }
}

pub fn int_json(m: &IntMatrix) -> Value {
    serde_json::to_value(MatrixJson::from_int(m)).expect("serializable")
}

pub fn mod_json(m: &ModMatrix) -> Value {
    serde_json::to_value(MatrixJson::from_mod(m)).expect("serializable")
}

/// `{"E": [e_1, ..., e_g]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormJson {
    #[serde(rename = "E")]
    pub e: Vec<i64>,
}

impl FormJson {
    pub fn to_form(&self) -> Result<PolarizedForm> {
        PolarizedForm::new(self.e.clone())
    }

    pub fn from_form(f: &PolarizedForm) -> Self {
        FormJson {
            e: f.polarization().to_vec(),
        }
    }
}

/// `{"dim": 4, "form": {"E": [1, 3]}, "moduli": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternJson {
    pub dim: usize,
    pub form: FormJson,
    pub moduli: Vec<Vec<u64>>,
}

impl PatternJson {
    pub fn from_pattern(p: &CongruencePattern) -> Self {
        PatternJson {
            dim: p.dim(),
            form: FormJson::from_form(p.form()),
            moduli: p.moduli_rows(),
        }
    }

    pub fn to_pattern(&self) -> Result<CongruencePattern> {
        let form = self.form.to_form()?;
        if form.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: form.dim(),
            });
        }
        CongruencePattern::new(form, self.moduli.clone())
    }
}

/// Finite group given by generators: `{"modulus": n, "form": {...}?, "generators": [...]}`.
/// Without a form the standard one of the generators' size is used.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupJson {
    pub modulus: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<FormJson>,
    pub generators: Vec<MatrixJson>,
}

impl GroupJson {
    pub fn form(&self) -> Result<PolarizedForm> {
        match &self.form {
            Some(f) => f.to_form(),
            None => {
                let d = self
                    .generators
                    .first()
                    .map(|g| g.dim)
                    .ok_or_else(|| Error::Input("group needs a form or at least one generator".into()))?;
                if d % 2 != 0 {
                    return Err(Error::Input(format!("odd dimension {d} needs an explicit form")));
                }
                Ok(PolarizedForm::standard(d / 2))
            }
        }
    }

    pub fn generators_mod(&self) -> Result<Vec<ModMatrix>> {
        self.generators.iter().map(|g| g.to_mod(self.modulus)).collect()
    }
}

/// Input of `pi-quotient`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaSpecJson {
    pub pattern: PatternJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<MatrixJson>>,
    pub boundaries: Vec<BoundarySpec>,
    pub working_modulus: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra_normal: Vec<MatrixJson>,
}

/// Externally supplied matrices `M0 ... M4` in the `(1,3)` level-2 setting.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct HkwJson {
    #[serde(rename = "M0", default, skip_serializing_if = "Option::is_none")]
    pub m0: Option<MatrixJson>,
    #[serde(rename = "M1", default, skip_serializing_if = "Option::is_none")]
    pub m1: Option<MatrixJson>,
    #[serde(rename = "M2", default, skip_serializing_if = "Option::is_none")]
    pub m2: Option<MatrixJson>,
    #[serde(rename = "M3", default, skip_serializing_if = "Option::is_none")]
    pub m3: Option<MatrixJson>,
    #[serde(rename = "M4", default, skip_serializing_if = "Option::is_none")]
    pub m4: Option<MatrixJson>,
}

/// Parses JSON, reporting line and column on failure.
pub fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        Error::Input(format!(
            "malformed {what} at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_json(&text, &path.display().to_string())
}

/// Integer as a JSON number of arbitrary size.
pub fn big_number(x: &impl ToString) -> Value {
    Value::Number(Number::from_string_unchecked(x.to_string()))
}
