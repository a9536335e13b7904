//! Grid evaluation of one registered quantity.

use std::collections::BTreeMap;

use nearfield_core::parallel::{map_points, Execution};
use nearfield_core::Error;

use crate::error::CliError;
use crate::request::ScanRequest;
use crate::targets::{find, registry, Column, Dim, Params, Quantity, TARGETS};

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    /// Grid coordinates, one per axis, in request order.
    pub point: Vec<f64>,
    /// Output values in natural units; NaN where the point was rejected.
    pub values: Vec<f64>,
    /// "ok", or why the point has no value.
    pub status: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanResult {
    pub request: ScanRequest,
    /// Every parameter with its value, gridded axes excluded.
    pub resolved: BTreeMap<String, f64>,
    pub axes: Vec<String>,
    pub columns: Vec<Column>,
    pub rows: Vec<Row>,
}

/// Errors that only invalidate one grid point.
fn is_pointwise(e: &Error) -> bool {
    matches!(
        e,
        Error::Pole(_) | Error::ConeSingularity(_) | Error::Domain(_) | Error::Grazing(_) | Error::Degenerate(_)
    )
}

fn lookup<'a>(reg: &'a [Quantity], target: &str, name: &str) -> Result<&'a Quantity, CliError> {
    if !TARGETS.contains(&target) {
        return Err(CliError::validation(format!(
            "unknown target `{target}`; expected one of {}",
            TARGETS.join(", ")
        )));
    }
    find(reg, target, name).ok_or_else(|| {
        let names: Vec<&str> = reg.iter().filter(|q| q.target == target).map(|q| q.name).collect();
        CliError::validation(format!(
            "unknown quantity `{name}` for target `{target}`; expected one of {}",
            names.join(", ")
        ))
    })
}

/// Cartesian product of the grids, first grid outermost.
fn points(req: &ScanRequest) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = vec![Vec::new()];
    for g in &req.grids {
        let vals = g.values();
        out = out
            .into_iter()
            .flat_map(|p| {
                vals.iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(*v);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn run_scan(req: &ScanRequest, exec: Execution) -> Result<ScanResult, CliError> {
    let reg = registry();
    let q = lookup(&reg, &req.target, &req.quantity)?;
    let known = |n: &str| q.params.iter().any(|(p, _, _)| *p == n);
    let accepted = || q.params.iter().map(|p| p.0).collect::<Vec<_>>().join(", ");
    for name in req.params.keys() {
        if !known(name) {
            return Err(CliError::validation(format!(
                "unknown parameter `{name}` for {}/{}; accepted: {}",
                q.target,
                q.name,
                accepted()
            )));
        }
    }
    let mut axes: Vec<String> = Vec::new();
    for g in &req.grids {
        if !known(&g.axis) {
            return Err(CliError::validation(format!(
                "unknown grid axis `{}` for {}/{}; accepted: {}",
                g.axis,
                q.target,
                q.name,
                accepted()
            )));
        }
        if axes.contains(&g.axis) {
            return Err(CliError::validation(format!("grid axis `{}` given twice", g.axis)));
        }
        if req.params.contains_key(&g.axis) {
            return Err(CliError::validation(format!("`{}` is both a fixed parameter and a grid axis", g.axis)));
        }
        axes.push(g.axis.clone());
    }

    let mut base = Params::new();
    let mut resolved = BTreeMap::new();
    for &(name, default, _) in &q.params {
        if axes.iter().any(|a| a == name) {
            continue;
        }
        let v = req.params.get(name).copied().unwrap_or(default);
        if v.is_nan() {
            return Err(CliError::validation(format!(
                "parameter `{name}` of {}/{} needs a value (--param {name}=.. or --grid {name}:..)",
                q.target, q.name
            )));
        }
        base.insert(name, v);
        resolved.insert(name.to_string(), v);
    }
    let axis_keys: Vec<&'static str> = axes
        .iter()
        .map(|a| q.params.iter().find(|p| p.0 == a).unwrap().0)
        .collect();

    let pts = points(req);
    let width = q.outputs.len();
    let evaluated = map_points(exec, &pts, |pt| {
        let mut p = base.clone();
        for (k, v) in axis_keys.iter().zip(pt) {
            p.insert(k, *v);
        }
        q.eval(&p)
    });

    let mut rows = Vec::with_capacity(pts.len());
    for (pt, res) in pts.into_iter().zip(evaluated) {
        let row = match res {
            Ok(values) => {
                debug_assert_eq!(values.len(), width);
                Row { point: pt, values, status: "ok".to_string() }
            }
            Err(e) if is_pointwise(&e) => Row { point: pt, values: vec![f64::NAN; width], status: e.to_string() },
            Err(e) => {
                let at: Vec<String> = axes.iter().zip(&pt).map(|(a, v)| format!("{a}={v}")).collect();
                let e = CliError::from(e);
                return Err(match e {
                    CliError::NonConvergence(m) => CliError::NonConvergence(format!("{m} at [{}]", at.join(", "))),
                    other => other,
                });
            }
        };
        rows.push(row);
    }
    Ok(ScanResult { request: req.clone(), resolved, axes, columns: q.outputs.clone(), rows })
}

/// Factor taking a natural-unit value of dimension `dim` to display units.
pub fn unit_factor(dim: Dim, units: &crate::request::UnitScale) -> f64 {
    match dim {
        Dim::None => 1.0,
        Dim::Length => units.length,
        Dim::Time => units.time,
        Dim::Frequency => 1.0 / units.time,
        Dim::Wavenumber => 1.0 / units.length,
    }
}
