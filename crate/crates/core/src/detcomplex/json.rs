use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::BoundedFreeComplex;
use crate::error::{Error, Result};
use crate::intlinalg::Matrix;

/// On-disk form: `{"ranks": {"-1": 1, "0": 1}, "differentials": {"-1": [[5]]}}`.
///
/// Keys are decimal degrees; the differential under key `i` maps degree `i`
/// to `i + 1`. Matrix entries may be JSON integers or decimal strings.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub ranks: BTreeMap<String, usize>,
    #[serde(default)]
    pub differentials: BTreeMap<String, Vec<Vec<Value>>>,
}

fn degree(key: &str) -> Result<i64> {
    key.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("degree key {key:?} is not an integer")))
}

fn entry(v: &Value) -> Result<BigInt> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => return Err(Error::Parse(format!("matrix entry {other} is not an integer"))),
    };
    BigInt::from_str(text.trim()).map_err(|_| Error::Parse(format!("matrix entry {text:?} is not an integer")))
}

impl ComplexFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("complex file: {e}")))
    }

    pub fn to_complex(&self) -> Result<BoundedFreeComplex> {
        let ranks = self
            .ranks
            .iter()
            .map(|(k, r)| Ok((degree(k)?, *r)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let rank = |i: i64| ranks.get(&i).copied().unwrap_or(0);
        let mut diffs = BTreeMap::new();
        for (k, rows) in &self.differentials {
            let i = degree(k)?;
            let data = rows
                .iter()
                .map(|row| row.iter().map(entry).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let m = if data.is_empty() {
                Matrix::zeros(0, rank(i))
            } else {
                Matrix::from_rows(data).map_err(|e| Error::MalformedComplex(e.to_string()))?
            };
            diffs.insert(i, m);
        }
        BoundedFreeComplex::new(ranks, diffs)
    }

    pub fn from_complex(c: &BoundedFreeComplex) -> Self {
        ComplexFile {
            ranks: c.ranks().iter().map(|(i, r)| (i.to_string(), *r)).collect(),
            differentials: c
                .diffs
                .iter()
                .map(|(i, d)| {
                    let rows = d
                        .to_rows()
                        .into_iter()
                        .map(|row| row.into_iter().map(|x| json_int(&x)).collect())
                        .collect();
                    (i.to_string(), rows)
                })
                .collect(),
        }
    }
}

fn json_int(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(x.to_string()),
    }
}

impl BoundedFreeComplex {
    pub fn from_json(text: &str) -> Result<Self> {
        ComplexFile::parse(text)?.to_complex()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ComplexFile::from_complex(self)).expect("serializable")
    }
}
