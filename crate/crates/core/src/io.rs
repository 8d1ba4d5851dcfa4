//! On-disk formats.
//!
//! JSON payloads store decimal rates as plain `f64` numbers:
//!
//! * regularity: `{"states": [...], "members": [[...], ...], "label": "..."}`
//! * scheme: `{"decisions": [{"u": .., "p": ..}, ...], "states": [...]}`
//! * chain: `{"levels": [{"u": .., "p": ..}, ...], "primitive": <regularity>}`
//!
//! Sample series are CSV with one decimal ROI per line; lines starting with
//! `#` and blank lines are ignored.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::chain::LeverageChain;
use crate::error::Error as ModelError;
use crate::regularity::{Distribution, Regularity, ThetaGrid};
use crate::scalar::Scalar;
use crate::scheme::{Decision, DecisionScheme};

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("cannot parse JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot read CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("line {line}: `{value}` is not a number")]
    BadSample { line: u64, value: String },
    #[error("invalid content: {0}")]
    Model(#[from] ModelError),
    #[error("member {index}: {source}")]
    Member { index: usize, source: ModelError },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegularityFile {
    pub states: Vec<f64>,
    pub members: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl RegularityFile {
    pub fn from_json(text: &str) -> Result<Self, FileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Validates the payload. Duplicate members are an error here: a file is
    /// expected to list each generator once.
    pub fn to_regularity<T: Scalar>(&self) -> Result<Regularity<T>, FileError> {
        let grid = ThetaGrid::shared(self.states.iter().map(|&s| T::lit(s)).collect())?;
        let members = self
            .members
            .iter()
            .enumerate()
            .map(|(index, row)| {
                Distribution::new(grid.clone(), row.iter().map(|&w| T::lit(w)).collect())
                    .map_err(|source| FileError::Member { index, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Regularity::new(
            grid,
            members,
            self.label.clone().unwrap_or_default(),
        )?)
    }

    pub fn from_regularity<T: Scalar>(q: &Regularity<T>) -> Self {
        Self {
            states: q.grid().states().iter().map(|s| s.as_f64()).collect(),
            members: q
                .members()
                .iter()
                .map(|m| m.weights().iter().map(|w| w.as_f64()).collect())
                .collect(),
            label: (!q.label().is_empty()).then(|| q.label().to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecisionRecord {
    pub u: f64,
    pub p: f64,
}

impl DecisionRecord {
    pub fn to_decision<T: Scalar>(&self) -> Result<Decision<T>, ModelError> {
        Decision::new(T::lit(self.u), T::lit(self.p))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeFile {
    pub decisions: Vec<DecisionRecord>,
    pub states: Vec<f64>,
}

impl SchemeFile {
    pub fn from_json(text: &str) -> Result<Self, FileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_scheme<T: Scalar>(&self) -> Result<DecisionScheme<T>, FileError> {
        let grid = ThetaGrid::shared(self.states.iter().map(|&s| T::lit(s)).collect())?;
        let decisions = self
            .decisions
            .iter()
            .map(DecisionRecord::to_decision)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DecisionScheme::build(decisions, grid)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainFile {
    pub levels: Vec<DecisionRecord>,
    pub primitive: RegularityFile,
}

impl ChainFile {
    pub fn from_json(text: &str) -> Result<Self, FileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_chain<T: Scalar>(&self) -> Result<LeverageChain<T>, FileError> {
        let levels = self
            .levels
            .iter()
            .map(DecisionRecord::to_decision)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LeverageChain::new(levels, self.primitive.to_regularity()?)?)
    }
}

/// Reads a one-column CSV of decimal ROI samples.
pub fn read_samples<R: Read>(reader: R) -> Result<Vec<f64>, FileError> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut samples = Vec::new();
    for record in csv.records() {
        let record = record?;
        let Some(field) = record.get(0) else { continue };
        if field.is_empty() && record.len() == 1 {
            continue;
        }
        let line = record.position().map_or(0, |p| p.line());
        let value = field.parse::<f64>().map_err(|_| FileError::BadSample {
            line,
            value: field.to_string(),
        })?;
        samples.push(value);
    }
    Ok(samples)
}

/// Writes the consequence matrix as CSV: a header row of states, then one row
/// per decision labelled `u,p`.
pub fn write_scheme_csv<T: Scalar, W: Write>(
    scheme: &DecisionScheme<T>,
    writer: W,
) -> Result<(), FileError> {
    let mut out = csv::Writer::from_writer(writer);
    let mut header = vec!["decision".to_string()];
    header.extend(
        scheme
            .grid()
            .states()
            .iter()
            .map(|s| s.as_f64().to_string()),
    );
    out.write_record(&header)?;
    for (d, row) in scheme.decisions().iter().zip(scheme.consequences()) {
        let mut record = vec![format!("{},{}", d.u().as_f64(), d.p().as_f64())];
        record.extend(row.iter().map(|x| x.as_f64().to_string()));
        out.write_record(&record)?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}
