use crate::error::{invalid, Error, Result};

/// Least-squares fit of ln y = slope ln x + intercept.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerLawFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_stderr: f64,
    pub sample_count: usize,
}

pub fn fit_power_law(samples: &[(f64, f64)]) -> Result<PowerLawFit> {
    if samples.len() < 3 {
        return Err(invalid("samples", "need at least 3 samples"));
    }
    if samples
        .iter()
        .any(|&(x, y)| !(x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite()))
    {
        return Err(invalid("samples", "all x and y must be finite and > 0"));
    }
    let n = samples.len() as f64;
    let lx: Vec<f64> = samples.iter().map(|s| s.0.ln()).collect();
    let ly: Vec<f64> = samples.iter().map(|s| s.1.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx <= f64::EPSILON * n * mx.abs().max(1.0) {
        return Err(Error::Degenerate("all x values are equal".into()));
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = lx
        .iter()
        .zip(&ly)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let slope_stderr = (ssr / (n - 2.0) / sxx).sqrt();
    Ok(PowerLawFit {
        slope,
        intercept,
        slope_stderr,
        sample_count: samples.len(),
    })
}
