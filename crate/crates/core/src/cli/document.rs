//! JSON tensor documents: `{"order": 3, "dim": 2, "entries": {"112": -0.5}}`.
//!
//! Keys are canonical sorted digit strings; absent entries are zero.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CoposError, Result};
use crate::tensor::{MultiIndex, SymmetricTensor};
use crate::vacuum::Z3Params;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TensorDocument {
    pub order: usize,
    pub dim: usize,
    pub entries: BTreeMap<String, f64>,
}

fn doc_err(msg: impl Into<String>) -> CoposError {
    CoposError::Document(msg.into())
}

fn field_usize(obj: &serde_json::Map<String, Value>, key: &str) -> Result<usize> {
    let v = obj.get(key).ok_or_else(|| doc_err(format!("missing field {key:?}")))?;
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| doc_err(format!("field {key:?} must be a nonnegative integer, got {v}")))
}

impl TensorDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| doc_err(format!("invalid JSON: {e}")))?;
        let obj = value.as_object().ok_or_else(|| doc_err("document must be a JSON object"))?;
        if let Some(k) = obj.keys().find(|k| !matches!(k.as_str(), "order" | "dim" | "entries" | "name")) {
            return Err(doc_err(format!("unknown field {k:?}")));
        }
        let order = field_usize(obj, "order")?;
        let dim = field_usize(obj, "dim")?;
        if order == 0 || !(1..=9).contains(&dim) {
            return Err(doc_err(format!(
                "order must be >= 1 and dim in 1..=9, got order {order}, dim {dim}"
            )));
        }
        let raw = match obj.get("entries") {
            None => return Err(doc_err("missing field \"entries\"")),
            Some(Value::Object(m)) => m,
            Some(other) => return Err(doc_err(format!("field \"entries\" must be an object, got {other}"))),
        };
        let mut entries = BTreeMap::new();
        for (key, v) in raw {
            check_key(key, order, dim)?;
            let x = v
                .as_f64()
                .ok_or_else(|| doc_err(format!("entry {key:?} must be a number, got {v}")))?;
            entries.insert(key.clone(), x);
        }
        Ok(Self { order, dim, entries })
    }

    pub fn from_tensor(t: &SymmetricTensor) -> Self {
        assert!(t.dim() <= 9, "digit keys need dim <= 9");
        Self {
            order: t.order(),
            dim: t.dim(),
            entries: t.nonzero_entries().map(|(k, v)| (k.to_string(), v)).collect(),
        }
    }

    pub fn to_tensor(&self) -> Result<SymmetricTensor> {
        let mut pairs = Vec::with_capacity(self.entries.len());
        for (key, &v) in &self.entries {
            check_key(key, self.order, self.dim)?;
            pairs.push((MultiIndex::parse_digits(key)?, v));
        }
        SymmetricTensor::build(self.order, self.dim, pairs)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }
}

fn check_key(key: &str, order: usize, dim: usize) -> Result<()> {
    let digits: Vec<u32> = key
        .chars()
        .map(|c| c.to_digit(10).ok_or_else(|| doc_err(format!("key {key:?}: {c:?} is not a digit"))))
        .collect::<Result<_>>()?;
    if digits.len() != order {
        return Err(doc_err(format!("key {key:?}: expected {order} digits, got {}", digits.len())));
    }
    if let Some(&d) = digits.iter().find(|&&d| d == 0 || d as usize > dim) {
        return Err(doc_err(format!("key {key:?}: digit {d} outside 1..={dim}")));
    }
    if digits.windows(2).any(|w| w[0] > w[1]) {
        let mut sorted = digits.clone();
        sorted.sort_unstable();
        let canon: String = sorted.iter().map(|d| d.to_string()).collect();
        return Err(doc_err(format!("key {key:?} is not canonical (use {canon:?})")));
    }
    Ok(())
}

/// Parses a tensor document into a tensor.
pub fn parse_tensor(text: &str) -> Result<SymmetricTensor> {
    TensorDocument::parse(text)?.to_tensor()
}

/// Parameter file for the vacuum application. Missing couplings are zero;
/// `rho` defaults to 1.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsDocument {
    #[serde(default)]
    pub l1: f64,
    #[serde(default)]
    pub l2: f64,
    #[serde(default)]
    pub l3: f64,
    #[serde(default)]
    pub l4: f64,
    #[serde(default)]
    pub ls: f64,
    #[serde(default)]
    pub ls1: f64,
    #[serde(default)]
    pub ls2: f64,
    /// `|ls12|`.
    #[serde(default)]
    pub ls12: f64,
    #[serde(default = "one")]
    pub rho: f64,
}

fn one() -> f64 {
    1.0
}

impl ParamsDocument {
    pub fn parse(text: &str) -> Result<Z3Params> {
        let d: Self = serde_json::from_str(text).map_err(|e| doc_err(format!("invalid parameter file: {e}")))?;
        let p = Z3Params {
            l1: d.l1,
            l2: d.l2,
            l3: d.l3,
            l4: d.l4,
            ls: d.ls,
            ls1: d.ls1,
            ls2: d.ls2,
            abs_ls12: d.ls12,
            rho: d.rho,
        };
        p.validate()?;
        Ok(p)
    }
}
