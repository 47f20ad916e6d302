//! File formats: instance JSON, sparse solution tables, run reports and front CSVs.

mod instance_json;
mod report;
mod solution_json;

use std::path::Path;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::model::{Instance, ValidationReport};

pub use instance_json::{
    instance_to_string, instance_to_value, parse_instance, parse_instance_str,
    parse_instance_unchecked,
};
pub use report::{
    read_front_csv, sweep_front_csv, weighted_front_csv, BoundsRecord, EvaluationReport,
    FrontRecord, FuzzyProgrammingRecord, GlobalCriterionRecord, Method, RunReport,
};
pub use solution_json::{
    parse_solution, parse_solution_str, ShipmentEntry, SolutionTables, TripEntry,
};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("instance rejected:\n{0}")]
    Invalid(ValidationReport),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub(crate) fn read(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })
}

pub fn write(path: impl AsRef<Path>, contents: &str) -> Result<(), IoError> {
    let path = path.as_ref();
    std::fs::write(path, contents).map_err(|source| IoError::Write {
        path: path.display().to_string(),
        source,
    })
}

/// SHA-256 of the canonical serialization, hex encoded.
pub fn instance_digest(instance: &Instance) -> String {
    let canonical = serde_json::to_string(&instance_to_value(instance)).expect("serializes");
    let hash = Sha256::digest(canonical.as_bytes());
    hash.iter().map(|b| format!("{b:02x}")).collect()
}
