//! Solution tables as sparse, one-based entry lists:
//!
//! ```json
//! {"z": [{"i": 1, "j": 1, "k": 1, "trips": 13}],
//!  "x": [{"i": 1, "j": 1, "k": 1, "p": 1, "units": 153}]}
//! ```
//!
//! Unlisted entries are zero. A run report (which nests these tables under
//! `"solution"`) is accepted as well.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::IoError;
use crate::model::{Dimensions, MistpSolution, SolutionStatus};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TripEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub trips: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShipmentEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub p: usize,
    pub units: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SolutionTables {
    #[serde(default)]
    pub z: Vec<TripEntry>,
    #[serde(default)]
    pub x: Vec<ShipmentEntry>,
}

impl SolutionTables {
    /// Nonzero entries in index order.
    pub fn from_solution(solution: &MistpSolution) -> Self {
        let mut tables = Self::default();
        for (i, a) in solution.z.iter().enumerate() {
            for (j, b) in a.iter().enumerate() {
                for (k, &trips) in b.iter().enumerate() {
                    if trips != 0 {
                        tables.z.push(TripEntry {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                            trips,
                        });
                    }
                }
            }
        }
        for (i, a) in solution.x.iter().enumerate() {
            for (j, b) in a.iter().enumerate() {
                for (k, c) in b.iter().enumerate() {
                    for (p, &units) in c.iter().enumerate() {
                        if units != 0.0 {
                            tables.x.push(ShipmentEntry {
                                i: i + 1,
                                j: j + 1,
                                k: k + 1,
                                p: p + 1,
                                units,
                            });
                        }
                    }
                }
            }
        }
        tables
    }

    /// Dense solution for `dims`. Objective values are left at zero.
    pub fn to_solution(&self, dims: Dimensions) -> Result<MistpSolution, IoError> {
        let mut sol = MistpSolution::zeros(dims);
        let Dimensions { m, n, k, l } = dims;
        let in_range = |name: &str, v: usize, hi: usize, entry: usize, table: &str| {
            if v == 0 || v > hi {
                Err(IoError::Schema {
                    path: format!("{table}[{entry}].{name}"),
                    message: format!("index {v} outside 1..={hi}"),
                })
            } else {
                Ok(v - 1)
            }
        };
        for (e, t) in self.z.iter().enumerate() {
            let i = in_range("i", t.i, m, e, "z")?;
            let j = in_range("j", t.j, n, e, "z")?;
            let kk = in_range("k", t.k, k, e, "z")?;
            sol.z[i][j][kk] += t.trips;
        }
        for (e, s) in self.x.iter().enumerate() {
            let i = in_range("i", s.i, m, e, "x")?;
            let j = in_range("j", s.j, n, e, "x")?;
            let kk = in_range("k", s.k, k, e, "x")?;
            let p = in_range("p", s.p, l, e, "x")?;
            sol.x[i][j][kk][p] += s.units;
        }
        sol.status = SolutionStatus::Feasible;
        Ok(sol)
    }
}

pub fn parse_solution(path: impl AsRef<Path>, dims: Dimensions) -> Result<MistpSolution, IoError> {
    let text = super::read(path.as_ref())?;
    parse_solution_str(&text, dims)
}

pub fn parse_solution_str(text: &str, dims: Dimensions) -> Result<MistpSolution, IoError> {
    let mut value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
    if let Some(nested) = value.get_mut("solution") {
        value = nested.take();
    }
    let tables: SolutionTables =
        serde_json::from_value(value).map_err(|e| IoError::Json(e.to_string()))?;
    tables.to_solution(dims)
}
