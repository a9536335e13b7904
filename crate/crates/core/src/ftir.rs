//! Evanescent near field at a totally reflecting boundary.
//!
//! The sharp interface is replaced by a Gaussian transition layer whose
//! width follows from the momentum change of the reflected wave. The
//! oscillating surface dipoles drive the near-field singular function.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{invalid, require_positive, Error, Result};
use crate::numerics::quadrature::{integrate, QuadratureSpec};
use crate::numerics::special::{dawson, heaviside, x_cos_minus_sin};
use crate::propagators::{singular_momentum_nf, SpectralPoint};
use crate::switching::critical_angle;

const I: Complex64 = Complex64::new(0.0, 1.0);

// the Gaussian layer weight e^{-2 s^2/dz^2} is below 1e-31 past this many widths
const LAYER_CUTOFF: f64 = 6.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FtirConfig {
    /// Index of the dense medium (z < 0).
    pub n1: f64,
    /// Index of the rare medium (z > 0).
    pub n2: f64,
    pub phi: f64,
    pub omega: f64,
    pub alpha: f64,
    pub e0: f64,
}

impl FtirConfig {
    /// Validated configuration; total reflection is required.
    pub fn new(n1: f64, n2: f64, phi: f64, omega: f64, alpha: f64, e0: f64) -> Result<Self> {
        for (name, n) in [("n1", n1), ("n2", n2)] {
            if !(n.is_finite() && n >= 1.0) {
                return Err(invalid(name, "refractive index must be >= 1"));
            }
        }
        require_positive("omega", omega)?;
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(invalid("alpha", "polarizability must be >= 0"));
        }
        if !e0.is_finite() {
            return Err(invalid("e0", "must be finite"));
        }
        if !(phi.is_finite() && (0.0..FRAC_PI_2).contains(&phi)) {
            return Err(invalid("phi", "must satisfy 0 <= phi < pi/2"));
        }
        match critical_angle(n1, n2) {
            Some(pc) if phi > pc => {}
            Some(pc) => {
                return Err(Error::Domain(format!(
                    "phi = {phi} is below the critical angle {pc}, no total reflection"
                )))
            }
            None => return Err(Error::Domain("total reflection needs n1 > n2".into())),
        }
        Ok(Self { n1, n2, phi, omega, alpha, e0 })
    }

    /// Relative index n1/n2.
    pub fn relative_index(&self) -> f64 {
        self.n1 / self.n2
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LayerGeometry {
    /// Width on the dense side.
    pub dz1: f64,
    /// Width on the rare side, n dz1.
    pub dz2: f64,
    /// Smoothing width of the surface delta function.
    pub xi: f64,
}

/// Step profile n1 theta(-z) + n2 theta(z), midpoint at z = 0.
pub fn refraction_profile(cfg: &FtirConfig, z: f64) -> f64 {
    cfg.n1 * heaviside(-z) + cfg.n2 * heaviside(z)
}

/// Layer widths 1/(4 n omega cos phi) on each side.
pub fn layer_geometry(cfg: &FtirConfig) -> Result<LayerGeometry> {
    let c = cfg.phi.cos();
    if !(c > 1e-9) {
        return Err(Error::Grazing(format!("phi = {} rad", cfg.phi)));
    }
    let dz1 = 1.0 / (4.0 * cfg.n1 * cfg.omega * c);
    let dz2 = 1.0 / (4.0 * cfg.n2 * cfg.omega * c);
    Ok(LayerGeometry { dz1, dz2, xi: dz1 })
}

/// I(q, dz) = int_0^inf e^{i q s - 2 s^2/dz^2} ds.
///
/// Written as dz sqrt(pi/8) [e^{-a^2} + (2i/sqrt pi) F(a)] with a = q dz/sqrt 8
/// and F Dawson's integral, which is the same as e^{-a^2}[1 - erf(-i a)] but
/// does not overflow for large a.
pub fn current_factor(q: f64, dz: f64) -> Result<Complex64> {
    require_positive("dz", dz)?;
    if !q.is_finite() {
        return Err(invalid("q", "must be finite"));
    }
    let a = q * dz / 8f64.sqrt();
    let pref = dz * (PI / 8.0).sqrt();
    Ok(pref * Complex64::new((-a * a).exp(), 2.0 / PI.sqrt() * dawson(a)))
}

/// The two-sided layer sum I(-q, dz) + n^-4 I(q, dz) on the dense-side width.
pub fn layer_braces(cfg: &FtirConfig, q: f64) -> Result<Complex64> {
    let g = layer_geometry(cfg)?;
    let n = cfg.relative_index();
    Ok(current_factor(-q, g.dz1)? + current_factor(q, g.dz1)? / n.powi(4))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldK {
    pub value: Complex64,
    /// Set when k sits on the light cone k = omega; the value there is the
    /// theta(0) = 1/2 mean of the two sides.
    pub on_cone: bool,
}

/// Near field in (t, k): 2 pi^-1/2 omega e^{-i omega t} alpha E0 dz^-3 k
/// {braces} D_N^(-)(omega; k).
///
/// The e^{-i omega t} component sits at spectral frequency -omega, so the
/// negative-frequency part is taken there and survives for a physical drive.
pub fn field_k(cfg: &FtirConfig, t: f64, k: f64, q: f64) -> Result<FieldK> {
    if cfg.omega == 0.0 {
        return Err(Error::Pole("omega = 0".into()));
    }
    let g = layer_geometry(cfg)?;
    let w = cfg.omega;
    let dn = singular_momentum_nf(SpectralPoint::new(-w, k)?)? * heaviside(w);
    let braces = layer_braces(cfg, q)?;
    let phase = Complex64::from_polar(1.0, -w * t);
    let value = 2.0 / PI.sqrt() * w * phase * cfg.alpha * cfg.e0 / g.dz1.powi(3) * k * braces * dn;
    let on_cone = (k - w).abs() <= 1e-12 * w;
    Ok(FieldK { value, on_cone })
}

/// Small-q replacement of the braces:
/// sqrt(pi/8) dz^-2 [e^{-q^2 dz^2/8} + n^-3 e^{-n^2 q^2 dz^2/8}].
pub fn field_k_small_q(cfg: &FtirConfig, q: f64) -> Result<f64> {
    let g = layer_geometry(cfg)?;
    let n = cfg.relative_index();
    let a2 = (q * g.dz1).powi(2) / 8.0;
    Ok((PI / 8.0).sqrt() / (g.dz1 * g.dz1) * ((-a2).exp() + (-n * n * a2).exp() / n.powi(3)))
}

/// Size of the objects resolvable by interference with the evanescent wave.
pub fn resolution_scale(k_z: f64, q: f64) -> Result<f64> {
    let d = (k_z - q).abs();
    if d == 0.0 {
        return Err(Error::Degenerate("k_z = q gives no finite scale".into()));
    }
    Ok(1.0 / d)
}

// grad of D_N^(-)(-omega; d) = theta(omega) i sin(omega r)/(2 pi omega^2 r), taken
// with respect to the displacement d
fn grad_dn_minus(omega: f64, d: [f64; 3]) -> [Complex64; 3] {
    let r = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
    if r == 0.0 {
        return [Complex64::new(0.0, 0.0); 3];
    }
    let w = -omega;
    let radial = heaviside(omega) * x_cos_minus_sin(w * r) / (r * r) / (2.0 * PI * w * w);
    d.map(|c| I * radial * c / r)
}

/// Real-space near field as a vector. Each side contributes a Gaussian-weighted
/// integral of grad D_N^(-) across its layer; the rare side enters mirrored
/// (z -> -z) with weight 1/n.
pub fn field_real_space_vector(
    cfg: &FtirConfig,
    t: f64,
    x: f64,
    y: f64,
    z: f64,
    spec: &QuadratureSpec,
) -> Result<[Complex64; 3]> {
    for (name, v) in [("t", t), ("x", x), ("y", y), ("z", z)] {
        if !v.is_finite() {
            return Err(invalid(name, "must be finite"));
        }
    }
    let g = layer_geometry(cfg)?;
    let w = cfg.omega;
    let n = cfg.relative_index();
    let drive = cfg.alpha * cfg.e0;
    let mut out = [Complex64::new(0.0, 0.0); 3];
    if drive == 0.0 {
        return Ok(out);
    }
    let spec = spec.with_hint(w);
    let sides = [(g.dz1, z, 1.0), (g.dz2, -z, 1.0 / n)];
    for (axis, slot) in out.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(dz, zz, weight) in &sides {
            let f = |s: f64| {
                let gr = grad_dn_minus(w, [x, y, s - zz]);
                gr[axis] * (-2.0 * s * s / (dz * dz)).exp()
            };
            let q = integrate(f, 0.0, LAYER_CUTOFF * dz, &spec)?;
            acc += weight * q.value / dz.powi(3);
        }
        *slot = acc;
    }
    let pref = 2.0 * I / PI.sqrt() * w * Complex64::from_polar(1.0, -w * t) * drive;
    Ok(out.map(|c| pref * c))
}

/// Normal (z) component of the real-space near field.
pub fn field_real_space(
    cfg: &FtirConfig,
    t: f64,
    x: f64,
    y: f64,
    z: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    Ok(field_real_space_vector(cfg, t, x, y, z, spec)?[2])
}
