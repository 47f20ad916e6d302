//! Instance files: one JSON document with dimensions, fuzzy tables and crisp data.
//!
//! ```json
//! {
//!   "dimensions": {"m": 2, "n": 3, "K": 2, "l": 2},
//!   "cost": [[[ [101, 102, 104, 105], ... ]]],      // [i][j][k]
//!   "travel_time_hours": [[[ ... ]]],               // [i][j][k]
//!   "handling_time_minutes": [[ ... ]],             // [p][k]
//!   "volume_cap_ft3": [...], "weight_cap_kg": [...],          // [k]
//!   "unit_volume_ft3": [...], "unit_weight_kg": [...],        // [p]
//!   "supply": [[...]], "demand": [[...]],                     // [i][p], [j][p]
//!   "fleet": [...]                                            // [k]
//! }
//! ```
//!
//! Fuzzy entries are 4-arrays or plain numbers (crisp). Unknown keys are ignored.

use std::path::Path;

use serde_json::{json, Map, Value};

use super::IoError;
use crate::model::{Dimensions, Instance};
use crate::Trapezoid;

pub fn parse_instance(path: impl AsRef<Path>) -> Result<Instance, IoError> {
    let text = super::read(path.as_ref())?;
    parse_instance_str(&text)
}

/// Parses and validates. Any validation error is returned as [`IoError::Invalid`].
pub fn parse_instance_str(text: &str) -> Result<Instance, IoError> {
    let instance = parse_instance_unchecked(text)?;
    let report = instance.validate();
    if report.is_ok() {
        Ok(instance)
    } else {
        Err(IoError::Invalid(report))
    }
}

/// Parses the schema without running instance validation.
pub fn parse_instance_unchecked(text: &str) -> Result<Instance, IoError> {
    let root: Value = serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
    let obj = root
        .as_object()
        .ok_or_else(|| schema("", "expected a JSON object"))?;

    let dims_obj = field(obj, "dimensions", "")?
        .as_object()
        .ok_or_else(|| schema("dimensions", "expected an object"))?;
    let dim = |key: &str| -> Result<usize, IoError> {
        let path = format!("dimensions.{key}");
        let v = field(dims_obj, key, "dimensions.")?;
        let d = v
            .as_u64()
            .ok_or_else(|| schema(&path, "expected a nonnegative integer"))?;
        Ok(d as usize)
    };
    let dims = Dimensions {
        m: dim("m")?,
        n: dim("n")?,
        k: dim("K")?,
        l: dim("l")?,
    };
    let Dimensions { m, n, k, l } = dims;

    let fuzzy3 = |key: &str| -> Result<Vec<Vec<Vec<Trapezoid>>>, IoError> {
        table(field(obj, key, "")?, key, m, |v, p| {
            table(v, p, n, |v, p| table(v, p, k, fuzzy))
        })
    };
    let cost = fuzzy3("cost")?;
    let travel_time = fuzzy3("travel_time_hours")?;
    let handling_time = table(
        field(obj, "handling_time_minutes", "")?,
        "handling_time_minutes",
        l,
        |v, p| table(v, p, k, fuzzy),
    )?;
    let reals = |key: &str, len: usize| table(field(obj, key, "")?, key, len, real);
    let volume_cap = reals("volume_cap_ft3", k)?;
    let weight_cap = reals("weight_cap_kg", k)?;
    let unit_volume = reals("unit_volume_ft3", l)?;
    let unit_weight = reals("unit_weight_kg", l)?;
    let supply = table(field(obj, "supply", "")?, "supply", m, |v, p| {
        table(v, p, l, real)
    })?;
    let demand = table(field(obj, "demand", "")?, "demand", n, |v, p| {
        table(v, p, l, real)
    })?;
    let fleet = table(field(obj, "fleet", "")?, "fleet", k, |v, p| {
        v.as_u64()
            .ok_or_else(|| schema(p, "expected a nonnegative integer"))
    })?;

    Ok(Instance {
        dims,
        cost,
        travel_time,
        handling_time,
        volume_cap,
        weight_cap,
        unit_volume,
        unit_weight,
        supply,
        demand,
        fleet,
    })
}

/// Serializes with every fuzzy entry as a 4-array.
pub fn instance_to_value(instance: &Instance) -> Value {
    let fz = |t: &Trapezoid| json!(t.components());
    let fuzzy3 = |t: &Vec<Vec<Vec<Trapezoid>>>| {
        Value::Array(
            t.iter()
                .map(|a| {
                    Value::Array(
                        a.iter()
                            .map(|b| Value::Array(b.iter().map(fz).collect()))
                            .collect(),
                    )
                })
                .collect(),
        )
    };
    let Dimensions { m, n, k, l } = instance.dims;
    json!({
        "dimensions": {"m": m, "n": n, "K": k, "l": l},
        "cost": fuzzy3(&instance.cost),
        "travel_time_hours": fuzzy3(&instance.travel_time),
        "handling_time_minutes": Value::Array(
            instance
                .handling_time
                .iter()
                .map(|row| Value::Array(row.iter().map(fz).collect()))
                .collect()
        ),
        "volume_cap_ft3": instance.volume_cap,
        "weight_cap_kg": instance.weight_cap,
        "unit_volume_ft3": instance.unit_volume,
        "unit_weight_kg": instance.unit_weight,
        "supply": instance.supply,
        "demand": instance.demand,
        "fleet": instance.fleet,
    })
}

pub fn instance_to_string(instance: &Instance) -> String {
    serde_json::to_string_pretty(&instance_to_value(instance)).expect("instance serializes")
}

fn schema(path: &str, message: &str) -> IoError {
    IoError::Schema {
        path: if path.is_empty() { "<root>".into() } else { path.into() },
        message: message.into(),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, prefix: &str) -> Result<&'a Value, IoError> {
    obj.get(key)
        .ok_or_else(|| schema(&format!("{prefix}{key}"), "missing field"))
}

fn table<V>(
    value: &Value,
    path: &str,
    len: usize,
    item: impl Fn(&Value, &str) -> Result<V, IoError>,
) -> Result<Vec<V>, IoError> {
    let arr = value
        .as_array()
        .ok_or_else(|| schema(path, "expected an array"))?;
    if arr.len() != len {
        return Err(schema(
            path,
            &format!("dimension mismatch: expected {len} entries, found {}", arr.len()),
        ));
    }
    arr.iter()
        .enumerate()
        .map(|(idx, v)| item(v, &format!("{path}[{idx}]")))
        .collect()
}

fn real(value: &Value, path: &str) -> Result<f64, IoError> {
    value
        .as_f64()
        .ok_or_else(|| schema(path, "expected a number"))
}

fn fuzzy(value: &Value, path: &str) -> Result<Trapezoid, IoError> {
    if let Some(c) = value.as_f64() {
        return Ok(Trapezoid::crisp(c));
    }
    let arr = value
        .as_array()
        .ok_or_else(|| schema(path, "expected a number or a 4-array"))?;
    if arr.len() != 4 {
        return Err(schema(
            path,
            &format!("expected a 4-array (r1, r2, r3, r4), found {} entries", arr.len()),
        ));
    }
    let mut r = [0.0; 4];
    for (slot, v) in r.iter_mut().zip(arr) {
        *slot = v
            .as_f64()
            .ok_or_else(|| schema(path, "trapezoid components must be numbers"))?;
    }
    Trapezoid::new(r[0], r[1], r[2], r[3]).map_err(|_| {
        schema(
            path,
            &format!("non-monotone trapezoid ({}, {}, {}, {})", r[0], r[1], r[2], r[3]),
        )
    })
}
