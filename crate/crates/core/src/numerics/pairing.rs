use std::f64::consts::PI;
use std::sync::Arc;

use super::quadrature::{integrate_partition, QuadratureSpec};
use crate::error::{require_positive, Result};
use crate::propagators::d_n_canonical;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A smooth, rapidly decaying test function with its first two derivatives.
#[derive(Clone)]
pub struct TestFunction {
    pub phi: RealFn,
    pub dphi: RealFn,
    pub d2phi: RealFn,
    /// Where the function is concentrated; used as a quadrature breakpoint.
    pub center: f64,
}

impl TestFunction {
    pub fn new(phi: RealFn, dphi: RealFn, d2phi: RealFn, center: f64) -> Self {
        Self {
            phi,
            dphi,
            d2phi,
            center,
        }
    }

    /// amp * exp(-(t - t0)^2 / (2 s^2)).
    pub fn gaussian(amp: f64, t0: f64, s: f64) -> Result<Self> {
        require_positive("width", s)?;
        let v = move |t: f64| amp * (-(t - t0).powi(2) / (2.0 * s * s)).exp();
        let d1 = move |t: f64| -(t - t0) / (s * s) * v(t);
        let d2 = move |t: f64| ((t - t0).powi(2) / s.powi(4) - 1.0 / (s * s)) * v(t);
        Ok(Self::new(Arc::new(v), Arc::new(d1), Arc::new(d2), t0))
    }

    /// t * exp(-t^2).
    pub fn odd_gaussian() -> Self {
        let v = |t: f64| t * (-t * t).exp();
        let d1 = |t: f64| (1.0 - 2.0 * t * t) * (-t * t).exp();
        let d2 = |t: f64| (4.0 * t.powi(3) - 6.0 * t) * (-t * t).exp();
        Self::new(Arc::new(v), Arc::new(d1), Arc::new(d2), 0.0)
    }

    /// The second derivative promoted to a test function (derivatives beyond
    /// it are not needed by any pairing that uses it as `phi`).
    pub fn second_derivative(&self) -> Self {
        let nan: RealFn = Arc::new(|_| f64::NAN);
        Self::new(self.d2phi.clone(), nan.clone(), nan, self.center)
    }
}

/// Distributions that can be paired with a test function in t at fixed r.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distribution {
    D,
    DN,
    DdtDN,
}

/// <dist(., r), phi> in the time variable.
pub fn pair_with_test_function(
    dist: Distribution,
    r: f64,
    phi: &TestFunction,
    spec: &QuadratureSpec,
) -> Result<f64> {
    require_positive("r", r)?;
    match dist {
        Distribution::D => Ok(((phi.phi)(r) - (phi.phi)(-r)) / (4.0 * PI * r)),
        Distribution::DN => against_dn(&*phi.phi, r, phi.center, spec),
        Distribution::DdtDN => Ok(-against_dn(&*phi.dphi, r, phi.center, spec)?),
    }
}

fn against_dn(
    g: &(dyn Fn(f64) -> f64 + Send + Sync),
    r: f64,
    center: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let f = |t: f64| g(t) * d_n_canonical(t, r);
    let mut pts = vec![f64::NEG_INFINITY, -r, r, f64::INFINITY];
    if center.is_finite() && center.abs() != r {
        pts.push(center);
    }
    pts.sort_by(f64::total_cmp);
    Ok(integrate_partition(&f, &pts, spec)?.value)
}
