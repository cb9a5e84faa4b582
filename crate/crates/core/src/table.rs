//! Challenge result tables: an algorithm × case × metric matrix of optional
//! metric values, the unit of all ranking analysis.
//!
//! The on-disk form is a CSV with header `algorithm,case,metric,value`; an
//! empty value field (or an absent row) is a missing value.

use std::collections::HashMap;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::MetricId;

/// Whether larger or smaller metric values indicate better performance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    HigherBetter,
    LowerBetter,
}

/// Registration of a metric: orientation, admissible value domain, and the
/// substitute used by the worst-value missing policy (if one exists).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricSpec {
    pub id: MetricId,
    pub orientation: Orientation,
    /// Inclusive `[min, max]` bounds; `None` on a side means unbounded.
    pub domain: Option<(f64, f64)>,
    pub worst_value: Option<f64>,
}

impl MetricSpec {
    pub fn new(id: impl Into<MetricId>, orientation: Orientation) -> Self {
        Self {
            id: id.into(),
            orientation,
            domain: None,
            worst_value: None,
        }
    }

    pub fn with_domain(mut self, min: f64, max: f64) -> Self {
        self.domain = Some((min, max));
        self
    }

    pub fn with_worst_value(mut self, worst: f64) -> Self {
        self.worst_value = Some(worst);
        self
    }

    /// Overlap score in [0, 1], higher better, worst value 0.
    pub fn dsc() -> Self {
        Self::new(MetricId::dsc(), Orientation::HigherBetter)
            .with_domain(0.0, 1.0)
            .with_worst_value(0.0)
    }

    /// Boundary distance in [0, ∞), lower better; no finite worst value.
    pub fn hd() -> Self {
        Self::new(MetricId::hd(), Orientation::LowerBetter).with_domain(0.0, f64::INFINITY)
    }

    pub fn hd95() -> Self {
        Self::new(MetricId::hd95(), Orientation::LowerBetter).with_domain(0.0, f64::INFINITY)
    }

    /// The three built-in segmentation metric registrations.
    pub fn builtin() -> Vec<Self> {
        vec![Self::dsc(), Self::hd(), Self::hd95()]
    }

    fn admits(&self, value: f64) -> bool {
        if !value.is_finite() {
            return false;
        }
        match self.domain {
            Some((lo, hi)) => value >= lo && value <= hi,
            None => true,
        }
    }

    fn validate(&self) -> Result<()> {
        if let (Some(worst), Some((lo, hi))) = (self.worst_value, self.domain) {
            if !(worst >= lo && worst <= hi) {
                return Err(Error::InvalidInput(format!(
                    "worst value {worst} of metric {} lies outside its domain [{lo}, {hi}]",
                    self.id
                )));
            }
        }
        Ok(())
    }
}

/// Immutable algorithm × case × metric matrix of optional metric values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultTable {
    algorithms: Vec<String>,
    cases: Vec<String>,
    metrics: Vec<MetricSpec>,
    /// Dense storage, indexed `[metric][algorithm][case]`.
    values: Vec<Option<f64>>,
    #[serde(skip)]
    algorithm_index: HashMap<String, usize>,
    #[serde(skip)]
    case_index: HashMap<String, usize>,
}

impl ResultTable {
    pub fn builder() -> ResultTableBuilder {
        ResultTableBuilder::with_specs(MetricSpec::builtin())
    }

    pub fn algorithms(&self) -> &[String] {
        &self.algorithms
    }

    pub fn cases(&self) -> &[String] {
        &self.cases
    }

    pub fn metric_specs(&self) -> &[MetricSpec] {
        &self.metrics
    }

    pub fn spec(&self, metric: &MetricId) -> Option<&MetricSpec> {
        self.metrics.iter().find(|s| &s.id == metric)
    }

    pub fn n_algorithms(&self) -> usize {
        self.algorithms.len()
    }

    pub fn n_cases(&self) -> usize {
        self.cases.len()
    }

    fn metric_pos(&self, metric: &MetricId) -> Option<usize> {
        self.metrics.iter().position(|s| &s.id == metric)
    }

    pub fn algorithm_pos(&self, algorithm: &str) -> Option<usize> {
        self.algorithm_index.get(algorithm).copied()
    }

    #[inline]
    pub(crate) fn value_at(&self, metric: usize, algorithm: usize, case: usize) -> Option<f64> {
        self.values[(metric * self.algorithms.len() + algorithm) * self.cases.len() + case]
    }

    pub fn value(&self, algorithm: &str, case: &str, metric: &MetricId) -> Option<f64> {
        let m = self.metric_pos(metric)?;
        let a = self.algorithm_index.get(algorithm)?;
        let c = self.case_index.get(case)?;
        self.value_at(m, *a, *c)
    }

    /// A copy with some of one algorithm's values removed; used by what-if
    /// analyses such as the missing-data audit. `drop` receives (case index,
    /// metric index, value) for each of the algorithm's present values.
    pub(crate) fn with_algorithm_values_dropped<F>(
        &self,
        algorithm: usize,
        drop: F,
    ) -> (Self, usize)
    where
        F: Fn(usize, usize, f64) -> bool,
    {
        let mut out = self.clone();
        let mut dropped = 0;
        for m in 0..self.metrics.len() {
            for c in 0..self.cases.len() {
                let idx = (m * self.algorithms.len() + algorithm) * self.cases.len() + c;
                if let Some(v) = out.values[idx] {
                    if drop(c, m, v) {
                        out.values[idx] = None;
                        dropped += 1;
                    }
                }
            }
        }
        (out, dropped)
    }

    pub fn from_csv_reader(reader: impl Read, specs: &[MetricSpec]) -> Result<Self> {
        let mut builder = ResultTableBuilder::with_specs(specs.to_vec());
        let mut csv_reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(reader);
        {
            let headers = csv_reader
                .headers()
                .map_err(|e| Error::Parse(format!("results csv: {e}")))?;
            let expected = ["algorithm", "case", "metric", "value"];
            if headers.iter().collect::<Vec<_>>() != expected {
                return Err(Error::Parse(format!(
                    "results csv: header must be `algorithm,case,metric,value`, got {:?}",
                    headers.iter().collect::<Vec<_>>().join(",")
                )));
            }
        }
        for (line, record) in csv_reader.records().enumerate() {
            let record = record.map_err(|e| Error::Parse(format!("results csv: {e}")))?;
            if record.len() != 4 {
                return Err(Error::Parse(format!(
                    "results csv row {}: expected 4 fields, got {}",
                    line + 2,
                    record.len()
                )));
            }
            let value = if record[3].is_empty() {
                None
            } else {
                Some(record[3].parse::<f64>().map_err(|e| {
                    Error::Parse(format!("results csv row {}: bad value: {e}", line + 2))
                })?)
            };
            builder.record(&record[0], &record[1], &MetricId::new(&record[2]), value)?;
        }
        builder.build()
    }

    pub fn from_csv_path(path: impl AsRef<Path>, specs: &[MetricSpec]) -> Result<Self> {
        let file = std::fs::File::open(path.as_ref())?;
        Self::from_csv_reader(file, specs)
    }

    /// Writes one row per (algorithm, case, metric); missing values leave the
    /// value field empty.
    pub fn to_csv_writer(&self, writer: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["algorithm", "case", "metric", "value"])
            .map_err(|e| Error::Parse(format!("results csv: {e}")))?;
        for (a, algorithm) in self.algorithms.iter().enumerate() {
            for (c, case) in self.cases.iter().enumerate() {
                for (m, spec) in self.metrics.iter().enumerate() {
                    let value = self
                        .value_at(m, a, c)
                        .map(|v| v.to_string())
                        .unwrap_or_default();
                    w.write_record([algorithm, case, spec.id.as_str(), &value])
                        .map_err(|e| Error::Parse(format!("results csv: {e}")))?;
                }
            }
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_path(&self, path: impl AsRef<Path>) -> Result<()> {
        let file = std::fs::File::create(path.as_ref())?;
        self.to_csv_writer(file)
    }
}

/// Accumulates (algorithm, case, metric, value) records into a [`ResultTable`].
///
/// Algorithms and cases keep first-appearance order. Values are checked
/// against the metric's domain as they arrive.
#[derive(Debug, Clone)]
pub struct ResultTableBuilder {
    specs: Vec<MetricSpec>,
    algorithms: Vec<String>,
    cases: Vec<String>,
    algorithm_index: HashMap<String, usize>,
    case_index: HashMap<String, usize>,
    rows: Vec<(usize, usize, usize, Option<f64>)>,
}

impl ResultTableBuilder {
    /// A builder that accepts only the given metric registrations.
    pub fn with_specs(specs: Vec<MetricSpec>) -> Self {
        Self {
            specs,
            algorithms: Vec::new(),
            cases: Vec::new(),
            algorithm_index: HashMap::new(),
            case_index: HashMap::new(),
            rows: Vec::new(),
        }
    }

    pub fn add_spec(&mut self, spec: MetricSpec) -> &mut Self {
        if self.specs.iter().all(|s| s.id != spec.id) {
            self.specs.push(spec);
        }
        self
    }

    fn intern(list: &mut Vec<String>, index: &mut HashMap<String, usize>, id: &str) -> usize {
        if let Some(&i) = index.get(id) {
            return i;
        }
        list.push(id.to_string());
        index.insert(id.to_string(), list.len() - 1);
        list.len() - 1
    }

    /// Records one observation; `None` marks an explicitly missing value.
    pub fn record(
        &mut self,
        algorithm: &str,
        case: &str,
        metric: &MetricId,
        value: Option<f64>,
    ) -> Result<&mut Self> {
        if algorithm.is_empty() || case.is_empty() {
            return Err(Error::InvalidInput(
                "algorithm and case identifiers must be nonempty".into(),
            ));
        }
        let m = self
            .specs
            .iter()
            .position(|s| &s.id == metric)
            .ok_or_else(|| Error::InvalidInput(format!("unregistered metric {metric}")))?;
        if let Some(v) = value {
            if !self.specs[m].admits(v) {
                return Err(Error::InvalidInput(format!(
                    "value {v} outside domain of metric {metric}"
                )));
            }
        }
        let a = Self::intern(&mut self.algorithms, &mut self.algorithm_index, algorithm);
        let c = Self::intern(&mut self.cases, &mut self.case_index, case);
        self.rows.push((a, c, m, value));
        Ok(self)
    }

    pub fn build(self) -> Result<ResultTable> {
        if self.specs.is_empty() {
            return Err(Error::InvalidInput(
                "a result table needs at least one registered metric".into(),
            ));
        }
        for spec in &self.specs {
            spec.validate()?;
        }
        if self.algorithms.is_empty() || self.cases.is_empty() {
            return Err(Error::InvalidInput(
                "a result table needs at least one algorithm and one case".into(),
            ));
        }
        let mut values = vec![None; self.specs.len() * self.algorithms.len() * self.cases.len()];
        let mut seen = vec![false; values.len()];
        for (a, c, m, v) in self.rows {
            let idx = (m * self.algorithms.len() + a) * self.cases.len() + c;
            if seen[idx] {
                return Err(Error::InvalidInput(format!(
                    "duplicate row for algorithm {:?}, case {:?}, metric {}",
                    self.algorithms[a], self.cases[c], self.specs[m].id
                )));
            }
            seen[idx] = true;
            values[idx] = v;
        }
        Ok(ResultTable {
            algorithms: self.algorithms,
            cases: self.cases,
            metrics: self.specs,
            values,
            algorithm_index: self.algorithm_index,
            case_index: self.case_index,
        })
    }
}
