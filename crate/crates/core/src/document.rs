//! JSON input documents describing a foliated nilmanifold.
//!
//! Every scalar is a string in the ℚ(s) grammar. Scalar strings are checked
//! while deserializing, so malformed values are reported with the line and
//! column of the offending string.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::albanese::{FoliatedNilmanifold, ModelError};
use crate::exactalg::{parse_rational, Matrix, Rational, Scalar, Subspace};
use crate::liealg::{default_names, LieAlgebra};

pub const DEFAULT_PARAM_SAMPLE: &str = "17/12";

/// A scalar kept in its source spelling; guaranteed to parse.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScalarText {
    text: String,
    value: Scalar,
}

impl ScalarText {
    pub fn new(text: impl Into<String>) -> Result<Self, crate::exactalg::ScalarParseError> {
        let text = text.into();
        let value = Scalar::parse(&text)?;
        Ok(ScalarText { text, value })
    }

    pub fn from_scalar(value: &Scalar) -> Self {
        ScalarText { text: value.to_string(), value: value.clone() }
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn value(&self) -> &Scalar {
        &self.value
    }
}

impl fmt::Display for ScalarText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl Serialize for ScalarText {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.text)
    }
}

impl<'de> Deserialize<'de> for ScalarText {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        ScalarText::new(text).map_err(de::Error::custom)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    /// 1-based basis indices.
    pub i: usize,
    pub j: usize,
    /// Coordinates of `[e_i, e_j]`, keyed by basis name or 1-based index.
    pub value: BTreeMap<String, ScalarText>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default = "default_sample")]
    pub param_sample: String,
}

fn default_sample() -> String {
    DEFAULT_PARAM_SAMPLE.to_string()
}

impl Default for Options {
    fn default() -> Self {
        Options { param_sample: default_sample() }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub name: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    /// Gram matrix; identity when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<Vec<ScalarText>>>,
    /// Spanning vectors of the leaf subalgebra.
    #[serde(default)]
    pub foliation: Vec<Vec<ScalarText>>,
    #[serde(default)]
    pub options: Options,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Problems with the input itself (as opposed to mathematical check failures).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("{source_name}:{line}:{column}: {msg}")]
    Json { source_name: String, line: usize, column: usize, msg: String },
    #[error("{path}: {msg}")]
    Invalid { path: String, msg: String },
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
}

/// Either a malformed input or a well-formed input that fails a structural check.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn invalid(path: impl Into<String>, msg: impl Into<String>) -> InputError {
    InputError::Invalid { path: path.into(), msg: msg.into() }
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl InputDocument {
    pub fn parse(text: &str, source_name: &str) -> Result<Self, InputError> {
        let doc: InputDocument = serde_json::from_str(text).map_err(|e| InputError::Json {
            source_name: source_name.to_string(),
            line: e.line(),
            column: e.column(),
            msg: strip_position(&e.to_string()),
        })?;
        doc.check()?;
        Ok(doc)
    }

    pub fn read(path: &std::path::Path) -> Result<Self, InputError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| InputError::Io { path: path.display().to_string(), msg: e.to_string() })?;
        InputDocument::parse(&text, &path.display().to_string())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes") + "\n"
    }

    pub fn names(&self) -> Vec<String> {
        self.basis.clone().unwrap_or_else(|| default_names(self.dim))
    }

    /// Shape checks that need no algebra.
    fn check(&self) -> Result<(), InputError> {
        if self.dim == 0 {
            return Err(invalid("dim", "dimension must be positive"));
        }
        if let Some(names) = &self.basis {
            if names.len() != self.dim {
                return Err(invalid("basis", format!("{} names given for dimension {}", names.len(), self.dim)));
            }
            for (i, name) in names.iter().enumerate() {
                if !is_identifier(name) || name == "s" {
                    return Err(invalid(format!("basis[{i}]"), format!("invalid basis name {name:?}")));
                }
                if names[..i].contains(name) {
                    return Err(invalid(format!("basis[{i}]"), format!("duplicate basis name {name:?}")));
                }
            }
        }
        let names = self.names();
        let mut seen = BTreeMap::new();
        for (b, entry) in self.brackets.iter().enumerate() {
            for (field, idx) in [("i", entry.i), ("j", entry.j)] {
                if idx == 0 || idx > self.dim {
                    return Err(invalid(
                        format!("brackets[{b}].{field}"),
                        format!("index {idx} out of range 1..={}", self.dim),
                    ));
                }
            }
            if let Some(prev) = seen.insert((entry.i, entry.j), b) {
                return Err(invalid(format!("brackets[{b}]"), format!("pair ({}, {}) already given in brackets[{prev}]", entry.i, entry.j)));
            }
            for key in entry.value.keys() {
                if resolve_key(key, &names).is_none() {
                    return Err(invalid(format!("brackets[{b}].value.{key}"), "unknown basis element"));
                }
            }
        }
        if let Some(rows) = &self.metric {
            if rows.len() != self.dim || rows.iter().any(|r| r.len() != self.dim) {
                return Err(invalid("metric", format!("expected a {0}x{0} matrix", self.dim)));
            }
        }
        for (f, v) in self.foliation.iter().enumerate() {
            if v.len() != self.dim {
                return Err(invalid(format!("foliation[{f}]"), format!("vector has length {}, expected {}", v.len(), self.dim)));
            }
        }
        self.param_sample()?;
        Ok(())
    }

    pub fn param_sample(&self) -> Result<Rational, InputError> {
        parse_rational(&self.options.param_sample).map_err(|e| invalid("options.param_sample", e.to_string()))
    }

    /// The algebra as written, without validation.
    pub fn algebra(&self) -> Result<LieAlgebra, InputError> {
        let names = self.names();
        let n = self.dim;
        let brackets = self.brackets.iter().map(|entry| {
            let mut v = vec![Scalar::from(0); n];
            for (key, c) in &entry.value {
                let k = resolve_key(key, &names).expect("checked");
                v[k] = c.value().clone();
            }
            (entry.i - 1, entry.j - 1, v)
        });
        LieAlgebra::from_brackets(names.clone(), brackets.collect::<Vec<_>>()).map_err(|e| invalid("brackets", e.to_string()))
    }

    pub fn leaf_space(&self) -> Subspace<Scalar> {
        Subspace::span(self.dim, self.foliation.iter().map(|v| v.iter().map(|c| c.value().clone()).collect()).collect())
    }

    pub fn gram(&self) -> Matrix<Scalar> {
        match &self.metric {
            Some(rows) => Matrix::from_rows(self.dim, rows.iter().map(|r| r.iter().map(|c| c.value().clone()).collect()).collect()),
            None => Matrix::identity(self.dim),
        }
    }

    /// Builds and validates the model.
    pub fn build(&self) -> Result<FoliatedNilmanifold, BuildError> {
        let alg = self.algebra()?;
        let fnm = FoliatedNilmanifold::new(&self.name, alg, self.leaf_space(), self.gram(), self.param_sample()?)?;
        if !fnm.leaf().is_ideal() {
            log::warn!("{}: leaf subalgebra is not an ideal; basic forms are still well defined", self.name);
        }
        Ok(fnm)
    }

    /// Document describing an existing model (used to emit built-in examples).
    pub fn from_model(fnm: &FoliatedNilmanifold, notes: Vec<String>) -> Self {
        let alg = fnm.algebra();
        let n = alg.dim();
        let names = alg.names().to_vec();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let value: BTreeMap<String, ScalarText> = alg
                    .structure(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                    .map(|(k, c)| (names[k].clone(), ScalarText::from_scalar(c)))
                    .collect();
                if !value.is_empty() {
                    brackets.push(BracketEntry { i: i + 1, j: j + 1, value });
                }
            }
        }
        let gram = fnm.metric().gram();
        let metric = if *gram == Matrix::identity(n) {
            None
        } else {
            Some((0..n).map(|i| gram.row(i).iter().map(ScalarText::from_scalar).collect()).collect())
        };
        InputDocument {
            name: fnm.name().to_string(),
            dim: n,
            basis: if names == default_names(n) { None } else { Some(names) },
            brackets,
            metric,
            foliation: fnm.leaf().space().basis().iter().map(|v| v.iter().map(ScalarText::from_scalar).collect()).collect(),
            options: Options { param_sample: fnm.param_sample().to_string() },
            notes,
        }
    }
}

/// Basis name or 1-based index.
fn resolve_key(key: &str, names: &[String]) -> Option<usize> {
    if let Some(i) = names.iter().position(|n| n == key) {
        return Some(i);
    }
    match key.parse::<usize>() {
        Ok(i) if (1..=names.len()).contains(&i) => Some(i - 1),
        _ => None,
    }
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(pos) => msg[..pos].to_string(),
        None => msg.to_string(),
    }
}
