//! CSV and JSON rendering of scan results. Numbers are written with 17
//! significant digits so they round-trip exactly; the text depends only on
//! the request, never on scheduling.

use std::str::FromStr;

use nearfield_core::{propagators, switching};
use serde_json::{json, Map, Number, Value};

use crate::error::CliError;
use crate::request::Format;
use crate::scan::{unit_factor, ScanResult};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// 17 significant digits; empty for NaN.
pub fn fmt_real(v: f64) -> String {
    if v.is_nan() {
        String::new()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:.16e}")
    }
}

fn json_real(v: f64) -> Value {
    if v.is_finite() {
        Value::Number(Number::from_str(&fmt_real(v)).expect("formatted float is a JSON number"))
    } else {
        Value::Null
    }
}

fn header(res: &ScanResult) -> Vec<String> {
    let mut h = res.axes.clone();
    h.extend(res.columns.iter().map(|c| c.name.clone()));
    h.push("status".to_string());
    h
}

fn display_values(res: &ScanResult, values: &[f64]) -> Vec<f64> {
    values
        .iter()
        .zip(&res.columns)
        .map(|(v, c)| v * unit_factor(c.dim, &res.request.units))
        .collect()
}

pub fn to_csv(res: &ScanResult) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(header(res)).map_err(io)?;
    for row in &res.rows {
        let mut rec: Vec<String> = row.point.iter().map(|v| fmt_real(*v)).collect();
        rec.extend(display_values(res, &row.values).into_iter().map(fmt_real));
        rec.push(row.status.clone());
        w.write_record(&rec).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

/// Sign and transform conventions, echoed in JSON output and `info`.
pub fn conventions() -> Value {
    json!({
        "propagator_fourier": propagators::CONVENTION.label(),
        "switching_fourier": switching::CONVENTION.label(),
        "time_derivative": "d/dt <-> +i omega",
        "near_field_time_form": "D_N(t, r) = (|t - r| - |t + r|)/(8 pi r)",
        "units": "natural, hbar = c = 1",
    })
}

pub fn to_json(res: &ScanResult) -> Value {
    let req = &res.request;
    let mut params = Map::new();
    for (k, v) in &res.resolved {
        params.insert(k.clone(), json_real(*v));
    }
    let columns: Vec<Value> = res
        .columns
        .iter()
        .map(|c| json!({"name": c.name, "dimension": c.dim.label()}))
        .collect();
    let meta = json!({
        "version": VERSION,
        "target": req.target,
        "quantity": req.quantity,
        "params": Value::Object(params),
        "grids": req.grids.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "unit_scale": {"length": json_real(req.units.length), "time": json_real(req.units.time)},
        "columns": columns,
        "conventions": conventions(),
    });
    let rows: Vec<Value> = res
        .rows
        .iter()
        .map(|row| {
            let mut m = Map::new();
            for (a, v) in res.axes.iter().zip(&row.point) {
                m.insert(a.clone(), json_real(*v));
            }
            for (c, v) in res.columns.iter().zip(display_values(res, &row.values)) {
                m.insert(c.name.clone(), json_real(v));
            }
            m.insert("status".into(), Value::String(row.status.clone()));
            Value::Object(m)
        })
        .collect();
    json!({"meta": meta, "rows": rows})
}

pub fn render(res: &ScanResult, format: Format) -> Result<String, CliError> {
    match format {
        Format::Csv => to_csv(res),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&to_json(res)).map_err(|e| CliError::Io(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
    }
}
