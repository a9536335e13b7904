//! Near field of a fixed point charge switched with g1 = e^{-gamma |t|}.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, require_positive, Error, Result};
use crate::numerics::quadrature::{integrate_partition, QuadratureSpec};
use crate::numerics::special::{dr_sin_over_r, heaviside, hyperbolic_a, hyperbolic_b, sgn};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChargeConfig {
    pub q: f64,
    pub gamma: f64,
}

impl ChargeConfig {
    pub fn new(q: f64, gamma: f64) -> Result<Self> {
        let c = Self { q, gamma };
        c.check()?;
        Ok(c)
    }

    fn check(&self) -> Result<()> {
        if !self.q.is_finite() {
            return Err(invalid("Q", "must be finite"));
        }
        require_positive("gamma", self.gamma)
    }
}

/// Time amplitude -gamma Q sgn(t) e^{-gamma |t|} of the current (times delta(r)).
pub fn current_time(cfg: &ChargeConfig, t: f64) -> Result<f64> {
    cfg.check()?;
    Ok(-cfg.gamma * cfg.q * sgn(t) * (-cfg.gamma * t.abs()).exp())
}

/// Frequency amplitude i gamma Q w / (pi (w^2 + gamma^2)).
pub fn current_freq(cfg: &ChargeConfig, omega: f64) -> Result<Complex64> {
    cfg.check()?;
    let g = cfg.gamma;
    Ok(I * (g * cfg.q * omega / (PI * (omega * omega + g * g))))
}

/// Radial field theta(-w) gamma Q / (2 pi^2 (w^2 + gamma^2)) d_r (sin(w r)/r).
pub fn field_mixed(cfg: &ChargeConfig, omega: f64, r: f64) -> Result<Complex64> {
    cfg.check()?;
    require_positive("r", r)?;
    if !omega.is_finite() {
        return Err(invalid("omega", "must be finite"));
    }
    let g = cfg.gamma;
    let pre = heaviside(-omega) * g * cfg.q / (2.0 * PI * PI * (omega * omega + g * g));
    Ok(Complex64::from(pre * dr_sin_over_r(omega, r)))
}

fn check_spectral(cfg: &ChargeConfig, omega: f64, k: f64) -> Result<()> {
    cfg.check()?;
    require_positive("k", k)?;
    if !omega.is_finite() {
        return Err(invalid("omega", "must be finite"));
    }
    if k == omega.abs() {
        return Err(Error::ConeSingularity(format!("k = |omega| = {k}")));
    }
    Ok(())
}

/// Momentum-space field as printed:
/// theta(-w) gamma Q / (4 pi^3 (w^2 + gamma^2)) {4w/(k^2 - w^2) - ln|(k - w)/(k + w)|}.
pub fn field_momentum(cfg: &ChargeConfig, omega: f64, k: f64) -> Result<Complex64> {
    check_spectral(cfg, omega, k)?;
    let g = cfg.gamma;
    let pre = heaviside(-omega) * g * cfg.q / (4.0 * PI.powi(3) * (omega * omega + g * g));
    let brace = 4.0 * omega / (k * k - omega * omega) - ((k - omega) / (k + omega)).abs().ln();
    Ok(Complex64::from(pre * brace))
}

/// Exact 3D radial transform of [`field_mixed`]:
/// theta(-w) gamma Q / (pi (w^2 + gamma^2)) {2w/(k^2 - w^2) + (1/k) ln|(k - w)/(k + w)|}.
pub fn field_momentum_exact(cfg: &ChargeConfig, omega: f64, k: f64) -> Result<Complex64> {
    check_spectral(cfg, omega, k)?;
    let g = cfg.gamma;
    let pre = heaviside(-omega) * g * cfg.q / (PI * (omega * omega + g * g));
    let brace = 2.0 * omega / (k * k - omega * omega) + ((k - omega) / (k + omega)).abs().ln() / k;
    Ok(Complex64::from(pre * brace))
}

// F(b) = i pi e^{-|b|} + 2 B(b) and its derivative.
fn f_and_df(b: f64) -> Result<(Complex64, Complex64)> {
    let e = (-b.abs()).exp();
    let f = Complex64::new(2.0 * hyperbolic_b(b)?, PI * e);
    let df = Complex64::new(2.0 * hyperbolic_a(b)?, -PI * sgn(b) * e);
    Ok((f, df))
}

// d_r { (F(b) - F(b'))/r } with b = gamma (t - r), b' = gamma (t + r).
fn bracket(cfg: &ChargeConfig, t: f64, r: f64) -> Result<Complex64> {
    cfg.check()?;
    require_positive("r", r)?;
    if !t.is_finite() {
        return Err(invalid("t", "must be finite"));
    }
    if t.abs() == r {
        return Err(Error::ConeSingularity(format!("|t| = r = {r}")));
    }
    let g = cfg.gamma;
    let (f1, d1) = f_and_df(g * (t - r))?;
    let (f2, d2) = f_and_df(g * (t + r))?;
    Ok(-(f1 - f2) / (r * r) - (d1 + d2) * (g / r))
}

/// Time-domain field: the inverse transform int dw e^{-i w t} E(w, r) of
/// [`field_mixed`], in closed form through shi and chi:
/// -(Q/(8 pi^2)) d_r {[F(gamma(t - r)) - F(gamma(t + r))]/r}.
pub fn field_time(cfg: &ChargeConfig, t: f64, r: f64) -> Result<Complex64> {
    Ok(bracket(cfg, t, r)? * (-cfg.q / (8.0 * PI * PI)))
}

/// The same bracket with the printed prefactor 2Q/(2 pi)^3; equals
/// -(2/pi) [`field_time`].
pub fn field_time_printed(cfg: &ChargeConfig, t: f64, r: f64) -> Result<Complex64> {
    Ok(bracket(cfg, t, r)? * (2.0 * cfg.q / (2.0 * PI).powi(3)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrequencyRegime {
    /// gamma >> w, large distances.
    LowFreq,
    /// gamma << w, short distances.
    HighFreq,
}

/// Rough t = 0 field in the two regimes.
pub fn field_asymptotic(cfg: &ChargeConfig, regime: FrequencyRegime, r: f64) -> Result<f64> {
    cfg.check()?;
    require_positive("r", r)?;
    let (q, g) = (cfg.q, cfg.gamma);
    Ok(match regime {
        FrequencyRegime::LowFreq => -q / (PI * PI * g * r.powi(3)),
        FrequencyRegime::HighFreq => -q * g / (2.0 * PI * PI * r),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SelfEnergyMethod {
    /// High-frequency form on (0, 1/gamma), low-frequency form beyond.
    AsymptoticPiecewise,
    /// |field_time(0, r)|^2 integrated over all r.
    FullNumeric,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SelfEnergy {
    pub value: f64,
    /// value / (Q^2 gamma).
    pub coefficient: f64,
    /// value / asymptotic value (1 for the asymptotic method).
    pub ratio_to_asymptotic: f64,
}

/// Energy (1/8 pi) int d^3r |E(t = 0, r)|^2 = (1/2) int r^2 |E|^2 dr.
pub fn self_energy(cfg: &ChargeConfig, method: SelfEnergyMethod, spec: &QuadratureSpec) -> Result<SelfEnergy> {
    cfg.check()?;
    let (q, g) = (cfg.q, cfg.gamma);
    // (1/2) int_{1/g}^inf r^2 (Q/(pi^2 g r^3))^2 dr + (1/2) int_0^{1/g} r^2 (Q g/(2 pi^2 r))^2 dr
    let low = 0.5 * (q / (PI * PI * g)).powi(2) * g.powi(3) / 3.0;
    let high = 0.5 * (q * g / (2.0 * PI * PI)).powi(2) / g;
    let asymptotic = low + high;
    let value = match method {
        SelfEnergyMethod::AsymptoticPiecewise => asymptotic,
        SelfEnergyMethod::FullNumeric => {
            let f = |r: f64| -> f64 {
                match field_time(cfg, 0.0, r) {
                    Ok(e) => 0.5 * r * r * e.norm_sqr(),
                    Err(_) => f64::NAN,
                }
            };
            let pts = [0.0, 0.1 / g, 1.0 / g, 10.0 / g, f64::INFINITY];
            integrate_partition(&f, &pts, spec)?.value
        }
    };
    let scale = q * q * g;
    Ok(SelfEnergy {
        value,
        coefficient: if scale != 0.0 { value / scale } else { 0.0 },
        ratio_to_asymptotic: if asymptotic != 0.0 { value / asymptotic } else { 1.0 },
    })
}

/// Effective charge density theta(-w) (i Q/(2 pi)^3) gamma w^2/(w^2 + gamma^2) sin(w r)/r.
pub fn charge_density_mixed(cfg: &ChargeConfig, omega: f64, r: f64) -> Result<Complex64> {
    cfg.check()?;
    require_positive("r", r)?;
    if !omega.is_finite() {
        return Err(invalid("omega", "must be finite"));
    }
    let g = cfg.gamma;
    let w2 = omega * omega;
    let v = heaviside(-omega) * cfg.q / (2.0 * PI).powi(3) * g * w2 / (w2 + g * g) * (omega * r).sin() / r;
    Ok(I * v)
}

/// rho(w, r) / (Q gamma D^(-)(w, r)) = -w^2 / (4 pi^2 (w^2 + gamma^2)), for w < 0.
pub fn density_ratio_to_far_field(cfg: &ChargeConfig, omega: f64) -> Result<f64> {
    cfg.check()?;
    if !(omega < 0.0) {
        return Err(Error::Domain("D^(-) vanishes for w >= 0".into()));
    }
    let w2 = omega * omega;
    Ok(-w2 / (4.0 * PI * PI * (w2 + cfg.gamma * cfg.gamma)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{field_from_current, GeneralizedCurrent};
    use crate::numerics::fourier::{ft_numeric_with, FtConvention, FtOptions};
    use std::sync::Arc;

    fn unit() -> ChargeConfig {
        ChargeConfig::new(1.0, 1.0).unwrap()
    }

    #[test]
    fn current_examples() {
        let c = unit();
        for t in [0.3, 1.7, 4.0] {
            assert_eq!(current_time(&c, -t).unwrap(), -current_time(&c, t).unwrap());
        }
        let v = current_freq(&c, 1.0).unwrap();
        assert!((v.im - 1.0 / (2.0 * PI)).abs() < 1e-16 && v.re == 0.0);
        let opts = FtOptions {
            breakpoints: vec![0.0],
            window: None,
        };
        let num = ft_numeric_with(
            |t| current_time(&c, t).unwrap(),
            2.0,
            FtConvention::SWITCHING,
            &QuadratureSpec::default(),
            &opts,
        )
        .unwrap();
        assert!((num - Complex64::new(0.0, 2.0 / (5.0 * PI))).norm() < 1e-11, "{num}");
    }

    #[test]
    fn field_mixed_examples() {
        let c = unit();
        assert_eq!(field_mixed(&c, 0.5, 1.0).unwrap(), Complex64::from(0.0));
        let v = field_mixed(&c, -1.0, 0.1).unwrap();
        // leading Taylor term gamma^2 Q r/(12 pi^2), positive for w = -gamma
        assert!((v.re - 0.1 / (12.0 * PI * PI)).abs() < 1e-6, "{v}");
        assert_eq!(field_mixed(&c, 0.0, 1.0).unwrap(), Complex64::from(0.0));
    }

    #[test]
    fn field_mixed_is_kernel_times_current() {
        let c = ChargeConfig::new(-1.7, 0.6).unwrap();
        let j = GeneralizedCurrent::PointSource(Arc::new(move |w| current_freq(&c, w).unwrap()));
        for &(w, r) in &[(-0.4, 0.3), (-2.0, 1.1), (-7.5, 3.0)] {
            let a = field_mixed(&c, w, r).unwrap();
            let b = field_from_current(&j, w, r, &QuadratureSpec::default()).unwrap();
            assert!((a - b).norm() <= 1e-12 * a.norm().max(1e-300));
        }
    }

    #[test]
    fn momentum_examples() {
        let c = unit();
        let v = field_momentum(&c, -1.0, 2.0).unwrap();
        let want = (-4.0 / 3.0 - 3f64.ln()) / (8.0 * PI.powi(3));
        assert!((v.re - want).abs() < 1e-16);
        assert!((v.re + 0.009_804_21).abs() < 1e-7);
        assert_eq!(field_momentum(&c, 1.0, 2.0).unwrap(), Complex64::from(0.0));
        assert!(matches!(field_momentum(&c, -2.0, 2.0), Err(Error::ConeSingularity(_))));
    }

    #[test]
    fn time_field_reference_values() {
        // frozen from an independent mpmath evaluation of the inverse transform
        let c = unit();
        let cases = [
            (0.3, 1.0, Complex64::new(0.032_181_760_471_6, 0.017_829_611_877_1)),
            (2.0, 1.0, Complex64::new(-0.002_577_888_556_59, -0.003_961_929_016_40)),
            (0.0, 1.5, Complex64::new(0.018_208_683_696_6, 0.0)),
        ];
        for (t, r, want) in cases {
            let v = field_time(&c, t, r).unwrap();
            assert!((v - want).norm() < 1e-11, "({t},{r}): {v}");
            let p = field_time_printed(&c, t, r).unwrap();
            assert!((v + p * (PI / 2.0)).norm() < 1e-15);
        }
        assert!(matches!(field_time(&c, 1.0, 1.0), Err(Error::ConeSingularity(_))));
    }

    #[test]
    fn time_field_tail() {
        // r^3 E(0, r) tends to 1/pi^2 in magnitude
        let c = unit();
        let v = field_time(&c, 0.0, 100.0).unwrap().re * 1e6;
        assert!((v - 1.0 / (PI * PI)).abs() < 1e-3, "{v}");
    }

    #[test]
    fn asymptotic_examples() {
        let c = unit();
        let lo = field_asymptotic(&c, FrequencyRegime::LowFreq, 1.0).unwrap();
        let hi = field_asymptotic(&c, FrequencyRegime::HighFreq, 1.0).unwrap();
        assert!((lo + 1.0 / (PI * PI)).abs() < 1e-16);
        assert!((hi + 0.5 / (PI * PI)).abs() < 1e-16);
        let g = 1.7;
        let c = ChargeConfig::new(1.0, g).unwrap();
        let rc = 2f64.sqrt() / g;
        let lo = field_asymptotic(&c, FrequencyRegime::LowFreq, rc).unwrap();
        let hi = field_asymptotic(&c, FrequencyRegime::HighFreq, rc).unwrap();
        assert!((lo / hi - 1.0).abs() < 1e-14);
    }

    #[test]
    fn self_energy_values() {
        let q = QuadratureSpec::default();
        let s = self_energy(&unit(), SelfEnergyMethod::AsymptoticPiecewise, &q).unwrap();
        assert!((s.coefficient - 7.0 / (24.0 * PI.powi(4))).abs() < 1e-15);
        let f = self_energy(&unit(), SelfEnergyMethod::FullNumeric, &q).unwrap();
        assert!((f.coefficient - 0.001_583_143_494).abs() < 1e-11, "{}", f.coefficient);
    }

    #[test]
    fn density_examples() {
        let c = unit();
        let v = charge_density_mixed(&c, -1.0, 1.0).unwrap();
        // sin(w r) with w = -1 carries the sign
        assert!((v.im + 1f64.sin() / (2.0 * (2.0 * PI).powi(3))).abs() < 1e-16);
        assert!(charge_density_mixed(&c, -PI, 1.0).unwrap().norm() < 1e-17);
        assert_eq!(charge_density_mixed(&c, 2.0, 1.0).unwrap(), Complex64::from(0.0));
        let r = density_ratio_to_far_field(&c, -50.0).unwrap();
        assert!((r + 1.0 / (4.0 * PI * PI)).abs() < 1e-3);
        assert!(density_ratio_to_far_field(&c, 1.0).is_err());
    }

    #[test]
    fn time_field_is_inverse_transform() {
        use crate::numerics::fourier::{ft_windowed_extrapolated, Prefactor};
        let c = unit();
        let (t, r) = (0.3, 1.0);
        let spec = QuadratureSpec::default().with_hint(t + r);
        let conv = FtConvention::new(-1, Prefactor::One).unwrap();
        let num = ft_windowed_extrapolated(|w| field_mixed(&c, w, r).unwrap(), t, conv, &spec, &[0.0]).unwrap();
        let v = field_time(&c, t, r).unwrap();
        assert!((num - v).norm() / v.norm() < 1e-4, "{num} vs {v}");
    }
}
