//! The 53-parameter challenge-reporting schema: registry, description
//! documents, completeness scoring and corpus coverage statistics.
//!
//! The registry ships as a versioned embedded JSON file
//! ([`ParameterRegistry::embedded_json`]) so external tooling can consume
//! it. A challenge description document is a JSON object with one object
//! per registry category; inside, each parameter key maps to `null`
//! (missing) or `{"value": ..., "notes": ...}`.

use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// Number of parameters in the reporting schema.
pub const PARAMETER_COUNT: usize = 53;
/// Size of the essential subset whose instantiation is gated.
pub const ESSENTIAL_COUNT: usize = 40;
/// Number of schema categories.
pub const CATEGORY_COUNT: usize = 7;
/// Minimum essential-parameter percentage required to pass the gate.
pub const ESSENTIAL_GATE_PCT: f64 = 90.0;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryDef {
    pub id: String,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterDef {
    /// Stable numeric id (1-based, in schema order).
    pub id: u32,
    /// Stable snake_case key used in description documents.
    pub key: String,
    pub name: String,
    /// Id of the category this parameter belongs to.
    pub category: String,
    /// Member of the gated essential subset.
    pub essential: bool,
    pub description: String,
}

/// The embedded, versioned parameter registry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterRegistry {
    pub version: String,
    pub categories: Vec<CategoryDef>,
    pub parameters: Vec<ParameterDef>,
}

const REGISTRY_JSON: &str = include_str!("../data/parameters.json");

impl ParameterRegistry {
    /// The registry built into this crate.
    pub fn builtin() -> &'static ParameterRegistry {
        static REGISTRY: OnceLock<ParameterRegistry> = OnceLock::new();
        REGISTRY.get_or_init(|| {
            let registry: ParameterRegistry =
                serde_json::from_str(REGISTRY_JSON).expect("embedded registry parses");
            registry.validate().expect("embedded registry is valid");
            registry
        })
    }

    /// The raw JSON the registry is built from, for external tooling.
    pub fn embedded_json() -> &'static str {
        REGISTRY_JSON
    }

    fn validate(&self) -> Result<()> {
        if self.parameters.len() != PARAMETER_COUNT {
            return Err(Error::InvalidInput(format!(
                "registry must define {PARAMETER_COUNT} parameters, found {}",
                self.parameters.len()
            )));
        }
        if self.categories.len() != CATEGORY_COUNT {
            return Err(Error::InvalidInput(format!(
                "registry must define {CATEGORY_COUNT} categories, found {}",
                self.categories.len()
            )));
        }
        let essential = self.parameters.iter().filter(|p| p.essential).count();
        if essential != ESSENTIAL_COUNT {
            return Err(Error::InvalidInput(format!(
                "registry must flag {ESSENTIAL_COUNT} essential parameters, found {essential}"
            )));
        }
        for (i, p) in self.parameters.iter().enumerate() {
            if p.id as usize != i + 1 {
                return Err(Error::InvalidInput(format!(
                    "registry parameter ids must be 1..=53 in order, found {} at {}",
                    p.id,
                    i + 1
                )));
            }
            if self.categories.iter().all(|c| c.id != p.category) {
                return Err(Error::InvalidInput(format!(
                    "parameter {} references unknown category {}",
                    p.key, p.category
                )));
            }
        }
        let mut keys: Vec<&str> = self.parameters.iter().map(|p| p.key.as_str()).collect();
        keys.sort_unstable();
        keys.dedup();
        if keys.len() != PARAMETER_COUNT {
            return Err(Error::InvalidInput("registry keys must be unique".into()));
        }
        Ok(())
    }

    pub fn parameter(&self, key: &str) -> Option<&ParameterDef> {
        self.parameters.iter().find(|p| p.key == key)
    }

    pub fn category(&self, id: &str) -> Option<&CategoryDef> {
        self.categories.iter().find(|c| c.id == id)
    }

    /// Parameters of one category, in schema order.
    pub fn parameters_in(&self, category: &str) -> Vec<&ParameterDef> {
        self.parameters
            .iter()
            .filter(|p| p.category == category)
            .collect()
    }
}

/// Instantiation state of one parameter in a description document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum ParameterStatus {
    Missing,
    Instantiated {
        value: Value,
        #[serde(skip_serializing_if = "Option::is_none")]
        notes: Option<String>,
    },
}

impl ParameterStatus {
    pub fn is_instantiated(&self) -> bool {
        matches!(self, ParameterStatus::Instantiated { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DocumentMetadata {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub version: Option<String>,
}

/// An instantiation of the reporting schema: one status per registry
/// parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct ChallengeDescription {
    pub metadata: DocumentMetadata,
    /// Aligned with `ParameterRegistry::builtin().parameters`.
    statuses: Vec<ParameterStatus>,
}

/// Presence-based instantiation: empty strings, arrays and objects do not
/// count as reported.
fn is_substantive(value: &Value) -> bool {
    match value {
        Value::Null => false,
        Value::String(s) => !s.trim().is_empty(),
        Value::Array(a) => !a.is_empty(),
        Value::Object(o) => !o.is_empty(),
        Value::Bool(_) | Value::Number(_) => true,
    }
}

impl Default for ChallengeDescription {
    fn default() -> Self {
        Self::empty()
    }
}

impl ChallengeDescription {
    /// A description with every parameter missing.
    pub fn empty() -> Self {
        Self {
            metadata: DocumentMetadata::default(),
            statuses: vec![ParameterStatus::Missing; PARAMETER_COUNT],
        }
    }

    pub fn status(&self, key: &str) -> Result<&ParameterStatus> {
        let registry = ParameterRegistry::builtin();
        let idx = registry
            .parameters
            .iter()
            .position(|p| p.key == key)
            .ok_or_else(|| Error::UnknownParameter(key.to_string()))?;
        Ok(&self.statuses[idx])
    }

    /// Instantiates a parameter. A non-substantive value (empty string,
    /// empty array/object, null) resets the parameter to missing.
    pub fn set(&mut self, key: &str, value: Value, notes: Option<String>) -> Result<&mut Self> {
        let registry = ParameterRegistry::builtin();
        let idx = registry
            .parameters
            .iter()
            .position(|p| p.key == key)
            .ok_or_else(|| Error::UnknownParameter(key.to_string()))?;
        self.statuses[idx] = if is_substantive(&value) {
            ParameterStatus::Instantiated { value, notes }
        } else {
            ParameterStatus::Missing
        };
        Ok(self)
    }

    pub fn instantiated_keys(&self) -> Vec<&str> {
        let registry = ParameterRegistry::builtin();
        registry
            .parameters
            .iter()
            .zip(&self.statuses)
            .filter(|(_, s)| s.is_instantiated())
            .map(|(p, _)| p.key.as_str())
            .collect()
    }

    pub fn missing_keys(&self) -> Vec<&str> {
        let registry = ParameterRegistry::builtin();
        registry
            .parameters
            .iter()
            .zip(&self.statuses)
            .filter(|(_, s)| !s.is_instantiated())
            .map(|(p, _)| p.key.as_str())
            .collect()
    }

    fn status_at(&self, idx: usize) -> &ParameterStatus {
        &self.statuses[idx]
    }

    /// Parses and normalizes a description document.
    ///
    /// Unknown category or parameter keys are rejected naming the key;
    /// absent parameters become missing.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| {
            Error::Parse(format!(
                "challenge description line {} column {}: {e}",
                e.line(),
                e.column()
            ))
        })?;
        Self::from_json_value(&value)
    }

    pub fn from_json_path(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())?;
        Self::from_json_str(&text)
    }

    pub fn from_json_value(value: &Value) -> Result<Self> {
        let registry = ParameterRegistry::builtin();
        let root = value
            .as_object()
            .ok_or_else(|| Error::Parse("challenge description must be a JSON object".into()))?;
        let mut desc = Self::empty();
        for (key, entry) in root {
            if key == "metadata" {
                desc.metadata = parse_metadata(entry)?;
                continue;
            }
            let category = registry
                .category(key)
                .ok_or_else(|| Error::UnknownParameter(key.clone()))?;
            let params = entry
                .as_object()
                .ok_or_else(|| Error::Parse(format!("category {key} must map to a JSON object")))?;
            for (pkey, pvalue) in params {
                let def = registry
                    .parameter(pkey)
                    .ok_or_else(|| Error::UnknownParameter(pkey.clone()))?;
                if def.category != category.id {
                    return Err(Error::UnknownParameter(format!(
                        "{pkey} (belongs to category {}, found under {})",
                        def.category, category.id
                    )));
                }
                let status = parse_status(pkey, pvalue)?;
                let idx = (def.id - 1) as usize;
                desc.statuses[idx] = status;
            }
        }
        Ok(desc)
    }

    /// Serializes with all 53 keys present (missing ones as `null`), grouped
    /// into the seven category objects in registry order.
    pub fn to_json_value(&self) -> Value {
        let registry = ParameterRegistry::builtin();
        let mut root = Map::new();
        if self.metadata != DocumentMetadata::default() {
            root.insert(
                "metadata".into(),
                serde_json::to_value(&self.metadata).expect("metadata serializes"),
            );
        }
        for category in &registry.categories {
            let mut section = Map::new();
            for def in registry.parameters_in(&category.id) {
                let entry = match self.status_at((def.id - 1) as usize) {
                    ParameterStatus::Missing => Value::Null,
                    ParameterStatus::Instantiated { value, notes } => {
                        let mut obj = Map::new();
                        obj.insert("value".into(), value.clone());
                        if let Some(notes) = notes {
                            obj.insert("notes".into(), Value::String(notes.clone()));
                        }
                        Value::Object(obj)
                    }
                };
                section.insert(def.key.clone(), entry);
            }
            root.insert(category.id.clone(), Value::Object(section));
        }
        Value::Object(root)
    }

    pub fn to_json_string_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("description serializes")
    }
}

fn parse_metadata(value: &Value) -> Result<DocumentMetadata> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("metadata must be a JSON object".into()))?;
    let mut meta = DocumentMetadata::default();
    for (k, v) in obj {
        let text = v
            .as_str()
            .ok_or_else(|| Error::Parse(format!("metadata field {k} must be a string")))?;
        match k.as_str() {
            "id" => meta.id = Some(text.to_string()),
            "version" => meta.version = Some(text.to_string()),
            other => return Err(Error::Parse(format!("unknown metadata field {other}"))),
        }
    }
    Ok(meta)
}

fn parse_status(key: &str, value: &Value) -> Result<ParameterStatus> {
    match value {
        Value::Null => Ok(ParameterStatus::Missing),
        Value::Object(obj) => {
            for field in obj.keys() {
                if field != "value" && field != "notes" {
                    return Err(Error::Parse(format!(
                        "parameter {key}: unknown field {field} (expected value, notes)"
                    )));
                }
            }
            let inner = obj
                .get("value")
                .ok_or_else(|| Error::Parse(format!("parameter {key}: missing field value")))?;
            let notes = match obj.get("notes") {
                None | Some(Value::Null) => None,
                Some(Value::String(s)) => Some(s.clone()),
                Some(_) => {
                    return Err(Error::Parse(format!(
                        "parameter {key}: notes must be a string"
                    )))
                }
            };
            if is_substantive(inner) {
                Ok(ParameterStatus::Instantiated {
                    value: inner.clone(),
                    notes,
                })
            } else {
                Ok(ParameterStatus::Missing)
            }
        }
        _ => Err(Error::Parse(format!(
            "parameter {key}: expected null or an object with a value field"
        ))),
    }
}

/// Loads a challenge description from a JSON document.
pub fn load_description(text: &str) -> Result<ChallengeDescription> {
    ChallengeDescription::from_json_str(text)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryCompleteness {
    pub category: String,
    pub instantiated: usize,
    pub total: usize,
    pub pct: f64,
}

/// Completeness of one description against the registry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompletenessReport {
    /// `100 * instantiated / 53`.
    pub overall_pct: f64,
    pub per_category: Vec<CategoryCompleteness>,
    /// `100 * essential instantiated / 40`.
    pub essential_pct: f64,
    /// `essential_pct >= 90`, the structured-submission gate.
    pub essential_gate_passed: bool,
    pub missing: Vec<String>,
}

/// Scores a description: overall, per-category and essential-subset
/// instantiation percentages plus the 90% essential gate.
pub fn completeness(desc: &ChallengeDescription) -> CompletenessReport {
    let registry = ParameterRegistry::builtin();
    let mut overall = 0usize;
    let mut essential = 0usize;
    let mut missing = Vec::new();
    for (def, status) in registry.parameters.iter().zip(0..PARAMETER_COUNT) {
        let instantiated = desc.status_at(status).is_instantiated();
        if instantiated {
            overall += 1;
            if def.essential {
                essential += 1;
            }
        } else {
            missing.push(def.key.clone());
        }
    }
    let per_category = registry
        .categories
        .iter()
        .map(|c| {
            let params = registry.parameters_in(&c.id);
            let done = params
                .iter()
                .filter(|p| desc.status_at((p.id - 1) as usize).is_instantiated())
                .count();
            CategoryCompleteness {
                category: c.id.clone(),
                instantiated: done,
                total: params.len(),
                pct: 100.0 * done as f64 / params.len() as f64,
            }
        })
        .collect();
    let essential_pct = 100.0 * essential as f64 / ESSENTIAL_COUNT as f64;
    CompletenessReport {
        overall_pct: 100.0 * overall as f64 / PARAMETER_COUNT as f64,
        per_category,
        essential_pct,
        essential_gate_passed: essential_pct >= ESSENTIAL_GATE_PCT,
        missing,
    }
}

/// Traffic-light band for corpus coverage: red below 50%, orange within
/// [50%, 90%], green above 90%.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverageBand {
    Red,
    Orange,
    Green,
}

impl CoverageBand {
    pub fn of(pct: f64) -> Self {
        if pct < 50.0 {
            CoverageBand::Red
        } else if pct <= 90.0 {
            CoverageBand::Orange
        } else {
            CoverageBand::Green
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterCoverage {
    pub key: String,
    pub name: String,
    pub category: String,
    pub reported: usize,
    pub total: usize,
    pub pct: f64,
    pub band: CoverageBand,
}

/// Per-parameter coverage over a corpus of descriptions: the percentage of
/// documents instantiating each parameter, with its traffic-light band.
pub fn coverage_stats(descs: &[ChallengeDescription]) -> Result<Vec<ParameterCoverage>> {
    if descs.is_empty() {
        return Err(Error::InvalidInput(
            "coverage statistics need at least one description".into(),
        ));
    }
    let registry = ParameterRegistry::builtin();
    Ok(registry
        .parameters
        .iter()
        .enumerate()
        .map(|(idx, def)| {
            let reported = descs
                .iter()
                .filter(|d| d.status_at(idx).is_instantiated())
                .count();
            let pct = 100.0 * reported as f64 / descs.len() as f64;
            ParameterCoverage {
                key: def.key.clone(),
                name: def.name.clone(),
                category: def.category.clone(),
                reported,
                total: descs.len(),
                pct,
                band: CoverageBand::of(pct),
            }
        })
        .collect())
}
