use std::fmt;

use serde::{Deserialize, Serialize};

use crate::Trapezoid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dimensions {
    /// Sources `i`.
    pub m: usize,
    /// Destinations `j`.
    pub n: usize,
    /// Vehicle types `k`.
    #[serde(rename = "K")]
    pub k: usize,
    /// Products `p`.
    pub l: usize,
}

/// A multi-item solid transportation instance. Cost is per vehicle trip,
/// travel time in hours per trip, handling time in minutes per unit.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub dims: Dimensions,
    /// `[i][j][k]`
    pub cost: Vec<Vec<Vec<Trapezoid>>>,
    /// `[i][j][k]`, hours.
    pub travel_time: Vec<Vec<Vec<Trapezoid>>>,
    /// `[p][k]`, minutes per unit.
    pub handling_time: Vec<Vec<Trapezoid>>,
    /// `[k]`, ft³ per vehicle.
    pub volume_cap: Vec<f64>,
    /// `[k]`, kg per vehicle.
    pub weight_cap: Vec<f64>,
    /// `[p]`, ft³ per unit.
    pub unit_volume: Vec<f64>,
    /// `[p]`, kg per unit.
    pub unit_weight: Vec<f64>,
    /// `[i][p]`
    pub supply: Vec<Vec<f64>>,
    /// `[j][p]`
    pub demand: Vec<Vec<f64>>,
    /// `[k]`, vehicles available.
    pub fleet: Vec<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub errors: Vec<String>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.errors {
            writeln!(f, "error: {e}")?;
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}

impl Instance {
    pub fn total_supply(&self, p: usize) -> f64 {
        self.supply.iter().map(|row| row[p]).sum()
    }

    pub fn total_demand(&self, p: usize) -> f64 {
        self.demand.iter().map(|row| row[p]).sum()
    }

    /// Checks shapes, signs, aggregate supply against demand, and whether the
    /// whole fleet could carry total demand by volume and by weight.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let Dimensions { m, n, k, l } = self.dims;
        for (name, v) in [("m", m), ("n", n), ("K", k), ("l", l)] {
            if v == 0 {
                report.errors.push(format!("dimension {name} must be at least 1"));
            }
        }
        let shapes_ok = check_shape3(&mut report, "cost", &self.cost, m, n, k)
            & check_shape3(&mut report, "travel_time", &self.travel_time, m, n, k)
            & check_shape2(&mut report, "handling_time", &self.handling_time, l, k)
            & check_len(&mut report, "volume_cap", self.volume_cap.len(), k)
            & check_len(&mut report, "weight_cap", self.weight_cap.len(), k)
            & check_len(&mut report, "unit_volume", self.unit_volume.len(), l)
            & check_len(&mut report, "unit_weight", self.unit_weight.len(), l)
            & check_shape2(&mut report, "supply", &self.supply, m, l)
            & check_shape2(&mut report, "demand", &self.demand, n, l)
            & check_len(&mut report, "fleet", self.fleet.len(), k);
        if !shapes_ok || !report.errors.is_empty() {
            return report;
        }

        for (name, values) in [
            ("volume_cap", &self.volume_cap),
            ("weight_cap", &self.weight_cap),
            ("unit_volume", &self.unit_volume),
            ("unit_weight", &self.unit_weight),
        ] {
            for (idx, &v) in values.iter().enumerate() {
                if !(v.is_finite() && v > 0.0) {
                    report
                        .errors
                        .push(format!("{name}[{idx}] must be positive, got {v}"));
                }
            }
        }
        for (name, table) in [("supply", &self.supply), ("demand", &self.demand)] {
            for (a, row) in table.iter().enumerate() {
                for (p, &v) in row.iter().enumerate() {
                    if !(v.is_finite() && v >= 0.0) {
                        report
                            .errors
                            .push(format!("{name}[{a}][{p}] must be nonnegative, got {v}"));
                    }
                }
            }
        }

        let mut fuzzy = |name: &str, path: String, xi: &Trapezoid| {
            if xi.r1() < 0.0 {
                report
                    .errors
                    .push(format!("{name}{path} has a negative component {xi}"));
            } else if xi.is_crisp() {
                report
                    .warnings
                    .push(format!("{name}{path} is crisp ({})", xi.r1()));
            }
        };
        for (name, table) in [("cost", &self.cost), ("travel_time", &self.travel_time)] {
            for (i, plane) in table.iter().enumerate() {
                for (j, row) in plane.iter().enumerate() {
                    for (kk, xi) in row.iter().enumerate() {
                        fuzzy(name, format!("[{i}][{j}][{kk}]"), xi);
                    }
                }
            }
        }
        for (p, row) in self.handling_time.iter().enumerate() {
            for (kk, xi) in row.iter().enumerate() {
                fuzzy("handling_time", format!("[{p}][{kk}]"), xi);
            }
        }
        if !report.errors.is_empty() {
            return report;
        }

        for p in 0..l {
            let (s, d) = (self.total_supply(p), self.total_demand(p));
            if s < d {
                report.errors.push(format!(
                    "supply < demand for product {} (supply {s}, demand {d})",
                    p + 1
                ));
            }
        }
        let need_volume: f64 = (0..l).map(|p| self.unit_volume[p] * self.total_demand(p)).sum();
        let need_weight: f64 = (0..l).map(|p| self.unit_weight[p] * self.total_demand(p)).sum();
        let fleet_volume: f64 = (0..k).map(|kk| self.fleet[kk] as f64 * self.volume_cap[kk]).sum();
        let fleet_weight: f64 = (0..k).map(|kk| self.fleet[kk] as f64 * self.weight_cap[kk]).sum();
        if fleet_volume < need_volume {
            report.errors.push(format!(
                "fleet volume capacity {fleet_volume} < volume of total demand {need_volume}"
            ));
        }
        if fleet_weight < need_weight {
            report.errors.push(format!(
                "fleet weight capacity {fleet_weight} < weight of total demand {need_weight}"
            ));
        }
        report
    }
}

fn check_len(report: &mut ValidationReport, name: &str, got: usize, want: usize) -> bool {
    if got != want {
        report
            .errors
            .push(format!("{name} has length {got}, expected {want}"));
        return false;
    }
    true
}

fn check_shape2<V>(
    report: &mut ValidationReport,
    name: &str,
    table: &[Vec<V>],
    outer: usize,
    inner: usize,
) -> bool {
    if !check_len(report, name, table.len(), outer) {
        return false;
    }
    let mut ok = true;
    for (a, row) in table.iter().enumerate() {
        ok &= check_len(report, &format!("{name}[{a}]"), row.len(), inner);
    }
    ok
}

fn check_shape3<V>(
    report: &mut ValidationReport,
    name: &str,
    table: &[Vec<Vec<V>>],
    m: usize,
    n: usize,
    k: usize,
) -> bool {
    if !check_len(report, name, table.len(), m) {
        return false;
    }
    let mut ok = true;
    for (i, plane) in table.iter().enumerate() {
        ok &= check_shape2(report, &format!("{name}[{i}]"), plane, n, k);
    }
    ok
}
