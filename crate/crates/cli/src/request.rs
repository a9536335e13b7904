use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// One scan axis, `axis:min:max:count[:log]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    pub axis: String,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl Grid {
    pub fn new(axis: &str, min: f64, max: f64, count: usize, spacing: Spacing) -> Result<Self, CliError> {
        if axis.is_empty() {
            return Err(CliError::validation("grid axis name is empty"));
        }
        if !(min.is_finite() && max.is_finite()) {
            return Err(CliError::validation(format!("grid `{axis}`: bounds must be finite")));
        }
        if count < 2 {
            return Err(CliError::validation(format!("grid `{axis}`: count must be >= 2, got {count}")));
        }
        if !(min < max) {
            return Err(CliError::validation(format!("grid `{axis}`: need min < max, got {min} >= {max}")));
        }
        if spacing == Spacing::Log && !(min > 0.0) {
            return Err(CliError::validation(format!("grid `{axis}`: log spacing needs min > 0")));
        }
        Ok(Self { axis: axis.to_string(), min, max, count, spacing })
    }

    /// Grid nodes; the end points are exact.
    pub fn values(&self) -> Vec<f64> {
        let n = self.count - 1;
        (0..=n)
            .map(|i| {
                if i == 0 {
                    return self.min;
                }
                if i == n {
                    return self.max;
                }
                let f = i as f64 / n as f64;
                match self.spacing {
                    Spacing::Linear => self.min + (self.max - self.min) * f,
                    Spacing::Log => (self.min.ln() + (self.max.ln() - self.min.ln()) * f).exp(),
                }
            })
            .collect()
    }
}

fn parse_real(what: &str, s: &str) -> Result<f64, CliError> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| CliError::validation(format!("{what}: `{s}` is not a real number")))
}

impl FromStr for Grid {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = s.split(':').collect();
        if !(4..=5).contains(&parts.len()) {
            return Err(CliError::validation(format!(
                "grid `{s}`: expected axis:min:max:count[:log]"
            )));
        }
        let axis = parts[0].trim();
        let min = parse_real(&format!("grid `{axis}` min"), parts[1])?;
        let max = parse_real(&format!("grid `{axis}` max"), parts[2])?;
        let count = parts[3]
            .trim()
            .parse::<usize>()
            .map_err(|_| CliError::validation(format!("grid `{axis}`: count `{}` is not a whole number", parts[3])))?;
        let spacing = match parts.get(4).map(|p| p.trim()) {
            None | Some("lin") | Some("linear") => Spacing::Linear,
            Some("log") => Spacing::Log,
            Some(other) => {
                return Err(CliError::validation(format!("grid `{axis}`: unknown spacing `{other}`")))
            }
        };
        Grid::new(axis, min, max, count, spacing)
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}:{}", self.axis, self.min, self.max, self.count)?;
        if self.spacing == Spacing::Log {
            write!(f, ":log")?;
        }
        Ok(())
    }
}

/// Parse a `name=value` pair.
pub fn parse_param(s: &str) -> Result<(String, f64), CliError> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| CliError::validation(format!("param `{s}`: expected name=value")))?;
    let k = k.trim();
    if k.is_empty() {
        return Err(CliError::validation(format!("param `{s}`: empty name")));
    }
    let v = parse_real(&format!("param `{k}`"), v)?;
    if !v.is_finite() {
        return Err(CliError::validation(format!("param `{k}`: must be finite")));
    }
    Ok((k.to_string(), v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(CliError::validation(format!("format `{other}`: expected csv or json"))),
        }
    }
}

/// Natural-unit to display-unit factors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitScale {
    pub length: f64,
    pub time: f64,
}

impl Default for UnitScale {
    fn default() -> Self {
        Self { length: 1.0, time: 1.0 }
    }
}

impl FromStr for UnitScale {
    type Err = CliError;

    /// `length=..,time=..`, either part optional.
    fn from_str(s: &str) -> Result<Self, CliError> {
        let mut out = UnitScale::default();
        for part in s.split(',').filter(|p| !p.trim().is_empty()) {
            let (k, v) = parse_param(part)?;
            if !(v > 0.0) {
                return Err(CliError::validation(format!("unit scale `{k}` must be > 0")));
            }
            match k.as_str() {
                "length" => out.length = v,
                "time" => out.time = v,
                other => return Err(CliError::validation(format!("unit scale `{other}`: expected length or time"))),
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanRequest {
    pub target: String,
    pub quantity: String,
    pub params: BTreeMap<String, f64>,
    pub grids: Vec<Grid>,
    pub format: Format,
    pub units: UnitScale,
}

impl ScanRequest {
    pub fn new(target: &str, quantity: &str) -> Self {
        Self {
            target: target.to_string(),
            quantity: quantity.to_string(),
            params: BTreeMap::new(),
            grids: Vec::new(),
            format: Format::Csv,
            units: UnitScale::default(),
        }
    }

    pub fn param(mut self, name: &str, v: f64) -> Self {
        self.params.insert(name.to_string(), v);
        self
    }

    pub fn grid(mut self, g: Grid) -> Self {
        self.grids.push(g);
        self
    }
}
