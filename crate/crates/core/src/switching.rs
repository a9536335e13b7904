//! Interaction-switching functions in time, frequency and space, and the
//! momentum change across a refracting boundary.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{invalid, require_positive, Error, Result};
use crate::numerics::fourier::FtConvention;

/// Transform convention pairing [`fis_time`] with [`fis_freq`].
pub const CONVENTION: FtConvention = FtConvention::SWITCHING;

/// gamma = c / r0 for the electron (classical radius), in 1/s.
pub const GAMMA_CLASSICAL_RADIUS_SI: f64 = 299_792_458.0 / 2.817_940_326_2e-15;
/// gamma' = m c^2 / hbar for the electron, in 1/s.
pub const GAMMA_COMPTON_SI: f64 = 7.763_440_711_1e20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TemporalForm {
    G1,
    G2,
    /// Invariant-interval form; coincides with G2 at r = 0, the only place
    /// it is used.
    G3,
    G1TwoLevel,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SwitchingSpec {
    pub form: TemporalForm,
    pub gamma: f64,
    pub omega0: f64,
}

impl SwitchingSpec {
    pub fn new(form: TemporalForm, gamma: f64) -> Result<Self> {
        Self::two_level_checked(form, gamma, 0.0)
    }

    pub fn two_level(gamma: f64, omega0: f64) -> Result<Self> {
        Self::two_level_checked(TemporalForm::G1TwoLevel, gamma, omega0)
    }

    fn two_level_checked(form: TemporalForm, gamma: f64, omega0: f64) -> Result<Self> {
        let s = Self {
            form,
            gamma,
            omega0,
        };
        s.check()?;
        Ok(s)
    }

    fn check(&self) -> Result<()> {
        require_positive("gamma", self.gamma)?;
        if !(self.omega0.is_finite() && self.omega0 >= 0.0) {
            return Err(invalid("omega0", "must be finite and >= 0"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpatialForm {
    G1,
    G2,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpatialSwitchingSpec {
    pub form: SpatialForm,
    pub kappa: f64,
}

impl SpatialSwitchingSpec {
    pub fn new(form: SpatialForm, kappa: f64) -> Result<Self> {
        require_positive("kappa", kappa)?;
        Ok(Self { form, kappa })
    }
}

pub fn fis_time(spec: &SwitchingSpec, t: f64) -> Result<f64> {
    spec.check()?;
    let g = spec.gamma;
    Ok(match spec.form {
        TemporalForm::G1 => (-g * t.abs()).exp(),
        TemporalForm::G2 | TemporalForm::G3 => (-(g * t).powi(2)).exp(),
        TemporalForm::G1TwoLevel => (-g * t.abs()).exp() * (spec.omega0 * t).cos(),
    })
}

fn lorentzian(w: f64, g: f64) -> f64 {
    g / (PI * (w * w + g * g))
}

/// Fourier image of [`fis_time`] under [`CONVENTION`].
pub fn fis_freq(spec: &SwitchingSpec, omega: f64) -> Result<f64> {
    spec.check()?;
    let g = spec.gamma;
    Ok(match spec.form {
        TemporalForm::G1 => lorentzian(omega, g),
        TemporalForm::G2 | TemporalForm::G3 => {
            (-(omega * omega) / (4.0 * g * g)).exp() / (2.0 * g * PI.sqrt())
        }
        TemporalForm::G1TwoLevel => {
            let w0 = spec.omega0;
            0.5 * (lorentzian(omega - w0, g) + lorentzian(omega + w0, g))
        }
    })
}

pub fn fis_spatial(spec: &SpatialSwitchingSpec, z: f64) -> Result<f64> {
    require_positive("kappa", spec.kappa)?;
    Ok(match spec.form {
        SpatialForm::G1 => (-spec.kappa * z.abs()).exp(),
        SpatialForm::G2 => (-(spec.kappa * z).powi(2)).exp(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    Reflection,
    Refraction,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentumAlteration {
    pub delta_kz: f64,
    /// Layer width 1/(2 |delta k_z|).
    pub delta_z: f64,
    pub regime: Regime,
    /// Refraction angle, when refracting.
    pub phi_refracted: Option<f64>,
}

// below this cos(phi) the layer width is treated as unbounded
const GRAZING_COS: f64 = 1e-9;

fn check_angle(phi: f64) -> Result<()> {
    if !(phi.is_finite() && (0.0..FRAC_PI_2).contains(&phi)) {
        return Err(invalid("phi", "must satisfy 0 <= phi < pi/2"));
    }
    if phi.cos() < GRAZING_COS {
        return Err(Error::Grazing(format!("phi = {phi} rad")));
    }
    Ok(())
}

/// Critical angle arcsin(n2/n1), when n1 > n2.
pub fn critical_angle(n1: f64, n2: f64) -> Option<f64> {
    (n1 > n2).then(|| (n2 / n1).asin())
}

/// Change of the normal momentum component at the boundary and the width
/// of the layer in which it happens.
pub fn momentum_alteration(n1: f64, n2: f64, omega: f64, phi: f64) -> Result<MomentumAlteration> {
    for (name, n) in [("n1", n1), ("n2", n2)] {
        if !(n.is_finite() && n >= 1.0) {
            return Err(invalid(name, "refractive index must be >= 1"));
        }
    }
    require_positive("omega", omega)?;
    check_angle(phi)?;
    let (delta_kz, regime, phi_refracted) = match critical_angle(n1, n2) {
        Some(pc) if phi > pc => (2.0 * omega * n1 * phi.cos(), Regime::Reflection, None),
        _ => {
            let s = (n1 * phi.sin() / n2).min(1.0);
            let pr = s.asin();
            let dk = omega * (n1 * phi.cos() - n2 * pr.cos()).abs();
            (dk, Regime::Refraction, Some(pr))
        }
    };
    if delta_kz == 0.0 {
        return Err(Error::Degenerate(
            "no momentum change (matched media at normal incidence or n1 = n2)".into(),
        ));
    }
    Ok(MomentumAlteration {
        delta_kz,
        delta_z: 1.0 / (2.0 * delta_kz),
        regime,
        phi_refracted,
    })
}

/// Switching profile across the boundary layer at total reflection.
pub fn fis_ftir(z: f64, omega: f64, n: f64, phi: f64, form: SpatialForm) -> Result<f64> {
    require_positive("n", n)?;
    if !omega.is_finite() || !z.is_finite() {
        return Err(invalid("omega/z", "must be finite"));
    }
    check_angle(phi)?;
    let a = 4.0 * n * omega * z * phi.cos();
    Ok(match form {
        SpatialForm::G1 => (-a.abs()).exp(),
        SpatialForm::G2 => (-a * a).exp(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::fourier::ft_numeric_with;
    use crate::numerics::{FtOptions, QuadratureSpec};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn time_examples() {
        let g1 = SwitchingSpec::new(TemporalForm::G1, 2.0).unwrap();
        assert_eq!(fis_time(&g1, 0.0).unwrap(), 1.0);
        let g2 = SwitchingSpec::new(TemporalForm::G2, 1.0).unwrap();
        assert!(close(fis_time(&g2, 2.0).unwrap(), (-4.0f64).exp(), 1e-17));
        let tl = SwitchingSpec::two_level(1.0, PI).unwrap();
        assert!(close(fis_time(&tl, 1.0).unwrap(), -0.367_879_441_171_442_3, 1e-15));
        assert!(SwitchingSpec::new(TemporalForm::G1, 0.0).is_err());
        assert!(SwitchingSpec::two_level(1.0, -1.0).is_err());
    }

    #[test]
    fn freq_examples() {
        let g1 = SwitchingSpec::new(TemporalForm::G1, 1.0).unwrap();
        assert!(close(fis_freq(&g1, 0.0).unwrap(), 1.0 / PI, 1e-16));
        let g2 = SwitchingSpec::new(TemporalForm::G2, 1.0).unwrap();
        assert!(close(fis_freq(&g2, 2.0).unwrap(), 0.103_776_874_355_148_7, 1e-15));
        let tl = SwitchingSpec::two_level(1.0, 5.0).unwrap();
        let want = (1.0 + 1.0 / 101.0) / (2.0 * PI);
        assert!(close(fis_freq(&tl, 5.0).unwrap(), want, 1e-15));
    }

    #[test]
    fn spatial_examples() {
        let s1 = SpatialSwitchingSpec::new(SpatialForm::G1, 3.0).unwrap();
        assert_eq!(fis_spatial(&s1, 0.0).unwrap(), 1.0);
        let s2 = SpatialSwitchingSpec::new(SpatialForm::G2, 2.0).unwrap();
        assert!(close(fis_spatial(&s2, 1.0).unwrap(), (-4.0f64).exp(), 1e-17));
        assert!(SpatialSwitchingSpec::new(SpatialForm::G1, -1.0).is_err());
    }

    #[test]
    fn momentum_examples() {
        let m = momentum_alteration(1.5, 1.0, 1.0, 60f64.to_radians()).unwrap();
        assert_eq!(m.regime, Regime::Reflection);
        assert!(close(m.delta_kz, 1.5, 1e-15) && close(m.delta_z, 1.0 / 3.0, 1e-15));
        let m = momentum_alteration(1.0, 1.5, 1.0, 30f64.to_radians()).unwrap();
        assert_eq!(m.regime, Regime::Refraction);
        assert!(close(m.phi_refracted.unwrap().to_degrees(), 19.471_220_634_490_69, 1e-10));
        assert!(close(m.delta_kz, 0.548_188_158_588_656_2, 1e-12), "{}", m.delta_kz);
    }

    #[test]
    fn critical_angle_boundary() {
        let (n1, n2) = (1.5, 1.0);
        let pc = critical_angle(n1, n2).unwrap();
        let at = momentum_alteration(n1, n2, 1.0, pc).unwrap();
        assert_eq!(at.regime, Regime::Refraction);
        assert!(close(at.phi_refracted.unwrap(), FRAC_PI_2, 1e-7));
        assert!(close(at.delta_kz, n1 * pc.cos(), 1e-7));
        // the two printed regimes differ by a factor 2 at the boundary
        let above = momentum_alteration(n1, n2, 1.0, pc + 1e-12).unwrap();
        assert_eq!(above.regime, Regime::Reflection);
        assert!(close(above.delta_kz / at.delta_kz, 2.0, 1e-6));
    }

    #[test]
    fn momentum_errors() {
        assert!(matches!(
            momentum_alteration(1.5, 1.0, 1.0, FRAC_PI_2 - 1e-12),
            Err(Error::Grazing(_))
        ));
        assert!(matches!(momentum_alteration(1.2, 1.2, 1.0, 0.3), Err(Error::Degenerate(_))));
        assert!(momentum_alteration(0.5, 1.0, 1.0, 0.3).is_err());
        assert!(momentum_alteration(1.5, 1.0, 1.0, FRAC_PI_2).is_err());
    }

    #[test]
    fn ftir_profile_examples() {
        let phi = 60f64.to_radians();
        for form in [SpatialForm::G1, SpatialForm::G2] {
            assert_eq!(fis_ftir(0.0, 1.0, 1.5, phi, form).unwrap(), 1.0);
            let v = fis_ftir(1.0 / 3.0, 1.0, 1.5, phi, form).unwrap();
            assert!(close(v, (-1.0f64).exp(), 1e-15));
        }
    }

    #[test]
    fn ft_pairing_two_level() {
        let spec = SwitchingSpec::two_level(0.7, 3.0).unwrap();
        let q = QuadratureSpec::default();
        let opts = FtOptions {
            breakpoints: vec![0.0],
            window: None,
        };
        for w in [-4.0, 0.0, 2.9, 6.5] {
            let v = ft_numeric_with(|t| fis_time(&spec, t).unwrap(), w, CONVENTION, &q, &opts).unwrap();
            assert!(close(v.re, fis_freq(&spec, w).unwrap(), 1e-10), "w = {w}: {v}");
            assert!(v.im.abs() < 1e-10);
        }
    }
}
