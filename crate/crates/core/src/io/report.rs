//! Run reports (JSON) and front listings (CSV).

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{IoError, SolutionTables};
use crate::model::{Evaluation, MistpSolution, Objective, SolutionStatus};
use crate::scalarize::{
    BoundsSource, FrontierPoint, Normalization, ParetoPoint, PayoffTable, SolveStats,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Single,
    FuzzyProgramming,
    GlobalCriterion,
    WeightedSum,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundsRecord {
    pub l1: f64,
    pub u1: f64,
    pub l2: f64,
    pub u2: f64,
    pub source: BoundsSource,
}

impl From<&PayoffTable> for BoundsRecord {
    fn from(t: &PayoffTable) -> Self {
        Self {
            l1: t.lower[0],
            u1: t.upper[0],
            l2: t.lower[1],
            u2: t.upper[1],
            source: t.source,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzyProgrammingRecord {
    pub lambda: f64,
    pub solver_lambda: f64,
    pub membership_cost: Option<f64>,
    pub membership_time: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlobalCriterionRecord {
    #[serde(rename = "G")]
    pub g: f64,
    pub q: u32,
    pub normalization: Normalization,
    pub ideal: [f64; 2],
    pub scale: [f64; 2],
    /// Best value among the ε-sweep points alone.
    #[serde(rename = "sweep_G")]
    pub sweep_g: f64,
    pub sweep_points: usize,
    pub lower_bound: f64,
    pub bound_gap: f64,
    pub refinements: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontRecord {
    pub w: f64,
    pub f1: f64,
    pub f2: f64,
    pub solution: SolutionTables,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub instance_digest: String,
    pub method: Method,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objective: Option<Objective>,
    pub eta: f64,
    pub gamma: f64,
    pub handling_divisor: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsRecord>,
    pub status: SolutionStatus,
    pub f1: Option<f64>,
    pub f2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fuzzy_programming: Option<FuzzyProgrammingRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub global_criterion: Option<GlobalCriterionRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub front: Option<Vec<FrontRecord>>,
    pub solution: SolutionTables,
    pub solver: SolveStats,
    pub wall_time_s: f64,
}

impl RunReport {
    /// Report skeleton carrying `solution`; method-specific fields start empty.
    pub fn new(
        instance_digest: String,
        method: Method,
        eta: f64,
        gamma: f64,
        handling_divisor: f64,
        solution: &MistpSolution,
    ) -> Self {
        let has_point = solution.status.has_point();
        Self {
            instance_digest,
            method,
            objective: None,
            eta,
            gamma,
            handling_divisor,
            bounds: None,
            status: solution.status,
            f1: has_point.then_some(solution.f1),
            f2: has_point.then_some(solution.f2),
            fuzzy_programming: None,
            global_criterion: None,
            front: None,
            solution: SolutionTables::from_solution(solution),
            solver: SolveStats::default(),
            wall_time_s: 0.0,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, IoError> {
        serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))
    }
}

/// Outcome of replaying a solution file against an instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationReport<'a> {
    pub instance_digest: String,
    pub eta: f64,
    pub gamma: f64,
    pub handling_divisor: f64,
    pub violated_rows: usize,
    #[serde(flatten)]
    pub evaluation: &'a Evaluation,
}

impl EvaluationReport<'_> {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// `w,f1,f2`, one row per point in the given order.
pub fn weighted_front_csv(points: &[ParetoPoint]) -> Result<String, IoError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["w", "f1", "f2"])?;
    for p in points {
        w.serialize((p.weight, p.f1, p.f2))?;
    }
    finish(w)
}

/// `eps,f1,f2,G`, sorted by f1 ascending.
pub fn sweep_front_csv(points: &[FrontierPoint]) -> Result<String, IoError> {
    let mut sorted: Vec<&FrontierPoint> = points.iter().collect();
    sorted.sort_by(|a, b| a.f1.total_cmp(&b.f1));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["eps", "f1", "f2", "G"])?;
    for p in sorted {
        w.serialize((p.eps, p.f1, p.f2, p.g))?;
    }
    finish(w)
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String, IoError> {
    let bytes = w
        .into_inner()
        .map_err(|e| IoError::Json(format!("csv buffer: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Reads `(f1, f2)` pairs back from either front format.
pub fn read_front_csv(path: impl AsRef<Path>) -> Result<Vec<(f64, f64)>, IoError> {
    let text = super::read(path.as_ref())?;
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let headers = r.headers()?.clone();
    let col = |name: &str| {
        headers.iter().position(|h| h == name).ok_or_else(|| IoError::Schema {
            path: name.to_string(),
            message: "missing column".into(),
        })
    };
    let (c1, c2) = (col("f1")?, col("f2")?);
    let mut out = Vec::new();
    for (row, rec) in r.records().enumerate() {
        let rec = rec?;
        let num = |c: usize| {
            rec[c].parse::<f64>().map_err(|e| IoError::Schema {
                path: format!("row {}", row + 1),
                message: e.to_string(),
            })
        };
        out.push((num(c1)?, num(c2)?));
    }
    Ok(out)
}
