//! Provenance-tagged result records.

use std::collections::BTreeMap;

use serde::Serialize;

/// How a reported value was obtained. Values from `Formula` and `Oracle`
/// are exact; `BoundedSearch` values are certified only within the bound.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", content = "bound", rename_all = "kebab-case")]
pub enum Method {
    Formula,
    Oracle,
    BoundedSearch(usize),
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "type", content = "value", rename_all = "kebab-case")]
pub enum Value {
    Int(i64),
    /// Exact rational as (numerator, denominator).
    Rational(i64, i64),
    Set(Vec<i64>),
    /// Inclusive interval for values certified only within a bound.
    Interval(i64, i64),
    Text(String),
}

/// A single computed invariant with its method and echoed inputs.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct InvariantReport {
    pub name: String,
    pub value: Value,
    pub method: Method,
    pub inputs: BTreeMap<String, String>,
}

impl InvariantReport {
    pub fn new(name: &str, value: Value, method: Method) -> InvariantReport {
        InvariantReport { name: name.to_string(), value, method, inputs: BTreeMap::new() }
    }

    pub fn input(&mut self, key: &str, value: String) -> &mut Self {
        self.inputs.insert(key.to_string(), value);
        self
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self.method, Method::BoundedSearch(_))
    }
}
