//! The JSON evidence document the CLI consumes.
//!
//! ```json
//! {
//!   "frame": ["A", "B", "C"],
//!   "ordinals": [1.0, 2.0, 3.0],
//!   "bpas": [
//!     { "A": 0.5, "B": 0.2, "C": 0.3 },
//!     { "B": 0.9, "A,C": 0.1 }
//!   ]
//! }
//! ```
//!
//! `ordinals` is optional and defaults to `1..=N` in label order. Subset
//! keys are comma-joined labels, order-insensitive; two keys naming the
//! same subset are rejected.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use evidfuse_core::{Bpa, EvidenceError, EvidenceSet, FocalSet, Frame};
use serde::{Deserialize, Serialize};

/// Anything that should abort a command, with its exit code.
#[derive(Debug)]
pub enum CliError {
    Core(EvidenceError),
    Io(PathBuf, std::io::Error),
    Json(PathBuf, serde_json::Error),
    Usage(String),
}

impl CliError {
    /// Exit codes: 1 validation/usage, 2 total conflict, 3 numerical.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(EvidenceError::TotalConflict) => 2,
            CliError::Core(EvidenceError::NegativeQuadraticForm(_)) => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(err) => write!(f, "{err}"),
            CliError::Io(path, err) => write!(f, "{}: {err}", path.display()),
            CliError::Json(path, err) => write!(f, "{}: {err}", path.display()),
            CliError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<EvidenceError> for CliError {
    fn from(err: EvidenceError) -> Self {
        CliError::Core(err)
    }
}

/// A frame plus its list of mass maps, as stored on disk.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvidenceDocument {
    pub frame: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ordinals: Option<Vec<f64>>,
    pub bpas: Vec<BTreeMap<String, f64>>,
}

impl EvidenceDocument {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|err| CliError::Io(path.to_path_buf(), err))?;
        serde_json::from_str(&text).map_err(|err| CliError::Json(path.to_path_buf(), err))
    }

    pub fn frame(&self) -> Result<Frame, CliError> {
        let frame = match &self.ordinals {
            Some(ordinals) => Frame::with_ordinals(self.frame.clone(), ordinals.clone())?,
            None => Frame::new(self.frame.clone())?,
        };
        Ok(frame)
    }

    /// Validates the document into an evidence set.
    pub fn evidence_set(&self) -> Result<EvidenceSet, CliError> {
        let frame = self.frame()?;
        let mut bpas = Vec::with_capacity(self.bpas.len());
        for masses in &self.bpas {
            let assignments: Result<Vec<(FocalSet, f64)>, CliError> = masses
                .iter()
                .map(|(key, &mass)| Ok((parse_subset(&frame, key)?, mass)))
                .collect();
            bpas.push(Bpa::new_renormalized(frame.clone(), assignments?)?);
        }
        Ok(EvidenceSet::new(bpas)?)
    }
}

/// Parses a comma-joined subset key like `"A"` or `"B,A"` against a frame.
pub fn parse_subset(frame: &Frame, key: &str) -> Result<FocalSet, CliError> {
    let labels: Vec<&str> = key.split(',').map(str::trim).collect();
    if labels.iter().any(|l| l.is_empty()) {
        return Err(CliError::Usage(format!(
            "subset key {key:?} contains an empty label"
        )));
    }
    let mut seen: Vec<&str> = Vec::new();
    for label in &labels {
        if seen.contains(label) {
            return Err(CliError::Usage(format!(
                "subset key {key:?} repeats label {label:?}"
            )));
        }
        seen.push(label);
    }
    Ok(FocalSet::from_labels(frame, labels)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(json: &str) -> EvidenceDocument {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn parses_a_minimal_document() {
        let document = doc(
            r#"{"frame": ["A", "B", "C"],
                "bpas": [{"A": 0.5, "B": 0.2, "C": 0.3}, {"B": 0.9, "C": 0.1}]}"#,
        );
        let es = document.evidence_set().unwrap();
        assert_eq!(es.len(), 2);
        assert_eq!(es.frame().ordinals(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn honors_explicit_ordinals_and_composite_keys() {
        let document = doc(
            r#"{"frame": ["A", "B"], "ordinals": [2.5, 7.0],
                "bpas": [{"A,B": 1.0}]}"#,
        );
        let es = document.evidence_set().unwrap();
        assert_eq!(es.frame().ordinals(), &[2.5, 7.0]);
        assert_eq!(es.bpas()[0].mass(es.frame().theta()), 1.0);
    }

    #[test]
    fn subset_keys_are_order_insensitive_but_duplicate_free() {
        let document = doc(
            r#"{"frame": ["A", "B"], "bpas": [{"A,B": 0.6, "B,A": 0.4}]}"#,
        );
        let err = document.evidence_set().unwrap_err();
        assert!(matches!(
            err,
            CliError::Core(EvidenceError::DuplicateFocalSet)
        ));
    }

    #[test]
    fn rejects_unknown_labels_and_bad_keys() {
        let frame = Frame::new(["A", "B"]).unwrap();
        assert!(matches!(
            parse_subset(&frame, "A,Z").unwrap_err(),
            CliError::Core(EvidenceError::UnknownLabel(_))
        ));
        assert!(matches!(
            parse_subset(&frame, "A,,B").unwrap_err(),
            CliError::Usage(_)
        ));
        assert!(matches!(
            parse_subset(&frame, "A,A").unwrap_err(),
            CliError::Usage(_)
        ));
    }

    #[test]
    fn rejects_unknown_document_fields() {
        let result: Result<EvidenceDocument, _> =
            serde_json::from_str(r#"{"frame": ["A"], "bpas": [], "extra": 1}"#);
        assert!(result.is_err());
    }
}
