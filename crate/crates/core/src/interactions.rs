//! Near-field interactions between two atoms: van der Waals and resonant
//! potentials, scattering duration, Förster transfer and the split of
//! transfer probability into sub- and superluminal parts.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, require_positive, Error, Result};
use crate::numerics::quadrature::{
    integrate_oscillatory_tail, integrate_partition, integrate_with_breaks, QuadratureSpec,
};
use crate::propagators::superluminal_fraction;

/// omega0 R above this leaves the near-field regime.
pub const NEAR_FIELD_LIMIT: f64 = 0.1;

// half-width of the frequency window, in linewidths, for the Lorentzian transfer rate
const LORENTZ_WINDOW: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AtomModel {
    pub omega0: f64,
    pub gamma: f64,
    pub d: f64,
}

impl AtomModel {
    /// Two-level atom; the linewidth must satisfy gamma < omega0/10.
    pub fn new(omega0: f64, gamma: f64, d: f64) -> Result<Self> {
        require_positive("omega0", omega0)?;
        require_positive("gamma", gamma)?;
        if !d.is_finite() {
            return Err(invalid("d", "must be finite"));
        }
        if gamma >= omega0 / 10.0 {
            return Err(invalid("gamma", format!("needs gamma < omega0/10, got {gamma} vs {omega0}")));
        }
        Ok(Self { omega0, gamma, d })
    }

    /// Dipole from an oscillator strength, |d|^2 = f/(2 omega0).
    pub fn from_oscillator_strength(omega0: f64, gamma: f64, f: f64) -> Result<Self> {
        require_positive("f", f)?;
        require_positive("omega0", omega0)?;
        Self::new(omega0, gamma, (f / (2.0 * omega0)).sqrt())
    }
}

/// d^2 [1/(omega0 - omega - i Gamma) + 1/(omega0 + omega - i Gamma)].
pub fn polarizability(atom: &AtomModel, omega: f64) -> Complex64 {
    let d2 = atom.d * atom.d;
    let a = Complex64::new(atom.omega0, -atom.gamma);
    d2 * (1.0 / (a - omega) + 1.0 / (a + omega))
}

/// Causal continuation d^2 [1/(omega0 - w - i Gamma) + 1/(omega0 + w + i Gamma)],
/// analytic in the upper half plane; used on the imaginary axis.
pub fn polarizability_causal(atom: &AtomModel, omega: Complex64) -> Complex64 {
    let d2 = atom.d * atom.d;
    let a = Complex64::new(atom.omega0, -atom.gamma);
    d2 * (1.0 / (a - omega) + 1.0 / (a.conj() + omega))
}

/// Which propagator pieces enter the van der Waals potential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Decomposition {
    /// Near-field block only, the omega0 R << 1 law.
    #[default]
    NearOnly,
    /// Full causal dipole propagator, exploratory (retarded crossover).
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Potential {
    pub value: f64,
    /// Imaginary part left over after the contour rotation.
    pub imag_residue: f64,
    /// Set when omega0 R > NEAR_FIELD_LIMIT.
    pub regime_warning: bool,
}

fn check_radius(r: f64) -> Result<()> {
    require_positive("R", r)
}

fn freq_partition(omega0: f64) -> [f64; 6] {
    [0.0, 0.1 * omega0, omega0, 10.0 * omega0, 100.0 * omega0, f64::INFINITY]
}

/// Two-photon exchange potential after rotating omega -> i u:
/// U = -(3/(16 pi^3 R^6)) int_0^inf alpha1(iu) alpha2(iu) e^{-2uR} du.
pub fn nonresonant_potential(
    a1: &AtomModel,
    a2: &AtomModel,
    r: f64,
    decomposition: Decomposition,
    spec: &QuadratureSpec,
) -> Result<Potential> {
    check_radius(r)?;
    let f = |u: f64| {
        let w = Complex64::new(0.0, u);
        let x = u * r;
        let shape = match decomposition {
            Decomposition::NearOnly => 1.0,
            // (3 + 6x + 5x^2 + 2x^3 + x^4)/3, the NF term alone gives the 3
            Decomposition::Full => 1.0 + x * (2.0 + x * (5.0 / 3.0 + x * (2.0 / 3.0 + x / 3.0))),
        };
        polarizability_causal(a1, w) * polarizability_causal(a2, w) * (-2.0 * x).exp() * shape
    };
    let scale = a1.omega0.min(a2.omega0);
    let q = integrate_partition(&f, &freq_partition(scale), spec)?;
    let v = -3.0 / (16.0 * PI.powi(3) * r.powi(6)) * q.value;
    Ok(Potential {
        value: v.re,
        imag_residue: v.im,
        regime_warning: a1.omega0.max(a2.omega0) * r > NEAR_FIELD_LIMIT,
    })
}

/// How the real part is taken in the resonant potential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ResonantReading {
    /// Re of the full contraction, evaluated on the imaginary axis.
    #[default]
    Contraction,
    /// Re[alpha] against the complex propagator on the real axis.
    Literal,
}

/// Resonant single-exchange potential with the near-field block. The
/// contraction reading gives Re{(sqrt 6/(4 pi^2 R^3)) int_0^inf e^{-uR} alpha(iu) du},
/// about sqrt 6 d^2/(4 pi R^3).
pub fn resonant_potential(
    atom: &AtomModel,
    r: f64,
    reading: ResonantReading,
    spec: &QuadratureSpec,
) -> Result<Potential> {
    check_radius(r)?;
    let pref = 6f64.sqrt() / (4.0 * PI * PI * r.powi(3));
    let w0 = atom.omega0;
    let v = match reading {
        ResonantReading::Contraction => {
            let f = |u: f64| polarizability_causal(atom, Complex64::new(0.0, u)) * (-u * r).exp();
            pref * integrate_partition(&f, &freq_partition(w0), spec)?.value
        }
        ResonantReading::Literal => {
            // Re{-i pref int_0^inf e^{i w R} Re alpha dw} = pref int sin(wR) Re alpha dw
            let f = |w: f64| (w * r).sin() * polarizability(atom, w).re;
            let g = atom.gamma;
            let top = 4.0 * w0 + 20.0 * g;
            let breaks = [w0 - 10.0 * g, w0 - g, w0, w0 + g, w0 + 10.0 * g];
            let body = integrate_with_breaks(f, 0.0, top, &breaks, &spec.with_hint(r))?;
            let tail = integrate_oscillatory_tail(f, top, 1.0, PI / r, spec)?;
            Complex64::new(pref * (body.value + tail.value), 0.0)
        }
    };
    Ok(Potential {
        value: v.re,
        imag_residue: v.im,
        regime_warning: w0 * r > NEAR_FIELD_LIMIT,
    })
}

/// tau(omega) = (Gamma/2)/((omega0 - omega)^2 + Gamma^2/4).
pub fn scattering_duration(atom: &AtomModel, omega: f64) -> f64 {
    let g = atom.gamma;
    (g / 2.0) / ((atom.omega0 - omega).powi(2) + g * g / 4.0)
}

/// Squared Frobenius norm of the near-field block at frequency omega,
/// 6/(16 pi^2 omega^4 R^6).
pub fn nf_block_norm_sq(omega: f64, r: f64) -> f64 {
    6.0 / (16.0 * PI * PI * omega.powi(4) * r.powi(6))
}

/// How the duration factor is handled in the transfer rate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TransferMethod {
    /// tau collapsed to pi delta(omega - omega0).
    #[default]
    DeltaCollapse,
    /// tau kept as a Lorentzian over omega0 +- 10 Gamma, normalized to pi.
    Lorentzian,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Transfer {
    /// Transfer rate up to the overall constant.
    pub w: f64,
    /// Radius where W Gamma = 1.
    pub forster_radius: f64,
    pub regime_warning: bool,
}

/// Förster transfer W = (d1^2 d2^2/Gamma) int ||D_NF||^2 tau dw. The donor
/// linewidth is used for Gamma.
pub fn transfer_probability(
    a1: &AtomModel,
    a2: &AtomModel,
    r: f64,
    method: TransferMethod,
    spec: &QuadratureSpec,
) -> Result<Transfer> {
    check_radius(r)?;
    if (a1.omega0 - a2.omega0).abs() > 1e-12 * a1.omega0 {
        return Err(invalid("omega0", "transfer needs identical transition frequencies"));
    }
    let (w0, g) = (a1.omega0, a1.gamma);
    let dd = (a1.d * a2.d).powi(2);
    let integral = match method {
        TransferMethod::DeltaCollapse => PI * nf_block_norm_sq(w0, r),
        TransferMethod::Lorentzian => {
            let (lo, hi) = (w0 - LORENTZ_WINDOW * g, w0 + LORENTZ_WINDOW * g);
            let f = |w: f64| nf_block_norm_sq(w, r) * scattering_duration(a1, w);
            let num = integrate_with_breaks(f, lo, hi, &[w0], spec)?.value;
            let den = integrate_with_breaks(|w| scattering_duration(a1, w), lo, hi, &[w0], spec)?.value;
            PI * num / den
        }
    };
    let w = dd * integral / g;
    if !(w.is_finite() && w > 0.0) {
        return Err(Error::Degenerate("transfer rate vanishes (zero dipole)".into()));
    }
    Ok(Transfer {
        w,
        forster_radius: r * (w * g).powf(1.0 / 6.0),
        regime_warning: w0 * r > NEAR_FIELD_LIMIT,
    })
}

/// Closed-form Förster radius (3 d1^2 d2^2/(8 pi omega0^4))^(1/6).
pub fn forster_radius(a1: &AtomModel, a2: &AtomModel) -> f64 {
    (3.0 * (a1.d * a2.d).powi(2) / (8.0 * PI * a1.omega0.powi(4))).powf(1.0 / 6.0)
}

/// (subluminal, superluminal) weights of the transfer within the window T.
pub fn transfer_split(r: f64, t: f64) -> Result<(f64, f64)> {
    let sup = superluminal_fraction(r, t)?;
    Ok((1.0 - sup, sup))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::fit::fit_power_law;

    const I: Complex64 = Complex64::new(0.0, 1.0);

    fn atom() -> AtomModel {
        AtomModel::new(1.0, 0.01, 1.0).unwrap()
    }

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    fn log_radii(n: usize) -> Vec<f64> {
        (0..n).map(|i| 1e-3 * 10f64.powf(i as f64 / (n - 1) as f64)).collect()
    }

    #[test]
    fn polarizability_examples() {
        let a = AtomModel { omega0: 1.0, gamma: 1e-12, d: 1.0 };
        assert!((polarizability(&a, 0.0) - Complex64::new(2.0, 0.0)).norm() < 1e-10);
        let b = atom();
        let res = polarizability(&b, 1.0);
        assert!((res - I / b.gamma).norm() < 1.0);
        assert!((polarizability(&b, 0.37) - polarizability(&b, -0.37)).norm() < 1e-15);
        // causal form agrees on the real axis in the real part
        let c = polarizability_causal(&b, Complex64::new(0.37, 0.0));
        assert!((c.re - polarizability(&b, 0.37).re).abs() < 1e-14);
        assert!(AtomModel::new(1.0, 0.2, 1.0).is_err());
        let f = AtomModel::from_oscillator_strength(2.0, 0.1, 0.8).unwrap();
        assert!((f.d * f.d - 0.2).abs() < 1e-15);
    }

    #[test]
    fn nonresonant_matches_london_limit() {
        // Gamma -> 0 and e^{-2uR} -> 1 give -3 d^4/(16 pi^2 omega0 R^6)
        let a = AtomModel::new(1.0, 1e-9, 1.0).unwrap();
        let r = 1e-6;
        let u = nonresonant_potential(&a, &a, r, Decomposition::NearOnly, &spec()).unwrap();
        let london = -3.0 / (16.0 * PI * PI * r.powi(6));
        assert!((u.value / london - 1.0).abs() < 1e-4);
        assert!(u.imag_residue.abs() < 1e-10 * u.value.abs());
        assert!(!u.regime_warning);
    }

    #[test]
    fn nonresonant_symmetries() {
        let a = atom();
        let b = AtomModel::new(1.3, 0.02, 0.7).unwrap();
        let r = 3e-3;
        let ab = nonresonant_potential(&a, &b, r, Decomposition::NearOnly, &spec()).unwrap().value;
        let ba = nonresonant_potential(&b, &a, r, Decomposition::NearOnly, &spec()).unwrap().value;
        assert!((ab - ba).abs() < 1e-12 * ab.abs());
        let a2 = AtomModel { d: 2.0 * a.d, ..a };
        let b2 = AtomModel { d: 2.0 * b.d, ..b };
        let big = nonresonant_potential(&a2, &b2, r, Decomposition::NearOnly, &spec()).unwrap().value;
        assert!((big / ab - 16.0).abs() < 1e-10);
        let far = nonresonant_potential(&a, &b, 1.0, Decomposition::NearOnly, &spec()).unwrap();
        assert!(far.regime_warning);
    }

    #[test]
    fn full_propagator_reduces_to_near_field_at_short_range() {
        let a = atom();
        let r = 1e-4;
        let n = nonresonant_potential(&a, &a, r, Decomposition::NearOnly, &spec()).unwrap().value;
        let f = nonresonant_potential(&a, &a, r, Decomposition::Full, &spec()).unwrap().value;
        assert!((f / n - 1.0).abs() < 1e-3);
    }

    #[test]
    fn scaling_slopes() {
        let a = atom();
        let radii = log_radii(10);
        let pts = |g: &dyn Fn(f64) -> f64| radii.iter().map(|&r| (r, g(r).abs())).collect::<Vec<_>>();
        let nr = fit_power_law(&pts(&|r| {
            nonresonant_potential(&a, &a, r, Decomposition::NearOnly, &spec()).unwrap().value
        }))
        .unwrap();
        assert!((nr.slope + 6.0).abs() < 0.02, "nonresonant slope {}", nr.slope);
        let res = fit_power_law(&pts(&|r| {
            resonant_potential(&a, r, ResonantReading::Contraction, &spec()).unwrap().value
        }))
        .unwrap();
        assert!((res.slope + 3.0).abs() < 0.02, "resonant slope {}", res.slope);
        let fo = fit_power_law(&pts(&|r| {
            transfer_probability(&a, &a, r, TransferMethod::DeltaCollapse, &spec()).unwrap().w
        }))
        .unwrap();
        assert!((fo.slope + 6.0).abs() < 0.02, "Förster slope {}", fo.slope);
    }

    #[test]
    fn resonant_leading_term_and_linearity() {
        let a = AtomModel::new(1.0, 1e-6, 1.0).unwrap();
        let r = 1e-5;
        let u = resonant_potential(&a, r, ResonantReading::Contraction, &spec()).unwrap();
        let lead = 6f64.sqrt() / (4.0 * PI * r.powi(3));
        assert!((u.value / lead - 1.0).abs() < 1e-3);
        assert!(u.imag_residue.abs() < 1e-10 * u.value.abs());
        let b = AtomModel { d: 3.0, ..a };
        let ub = resonant_potential(&b, r, ResonantReading::Contraction, &spec()).unwrap();
        assert!((ub.value / u.value - 9.0).abs() < 1e-10);
        let c = AtomModel { d: -3.0, ..a };
        let uc = resonant_potential(&c, r, ResonantReading::Contraction, &spec()).unwrap();
        assert_eq!(ub.value, uc.value);
        // the literal reading evaluates but is not tied to any law
        let lit = resonant_potential(&atom(), 5e-3, ResonantReading::Literal, &spec()).unwrap();
        assert!(lit.value.is_finite());
    }

    #[test]
    fn duration_examples() {
        let a = atom();
        assert!((scattering_duration(&a, 1.0) - 2.0 / a.gamma).abs() < 1e-10);
        let half = scattering_duration(&a, 1.0 + a.gamma / 2.0);
        assert!((half - 1.0 / a.gamma).abs() < 1e-9);
        let q = integrate_partition(
            &|w: f64| scattering_duration(&a, w),
            &[f64::NEG_INFINITY, 0.99, 1.0, 1.01, f64::INFINITY],
            &spec(),
        )
        .unwrap();
        assert!((q.value - PI).abs() < 1e-8);
    }

    #[test]
    fn forster_radius_and_lorentzian() {
        let a = atom();
        let r0 = forster_radius(&a, &a);
        let t = transfer_probability(&a, &a, r0, TransferMethod::DeltaCollapse, &spec()).unwrap();
        assert!((t.w * a.gamma - 1.0).abs() < 1e-12);
        assert!((t.forster_radius / r0 - 1.0).abs() < 1e-12);
        let big = AtomModel { d: 2.0, ..a };
        assert!((forster_radius(&big, &a) / r0 - 4f64.powf(1.0 / 6.0)).abs() < 1e-12);
        let l = transfer_probability(&a, &a, 0.1 * r0, TransferMethod::Lorentzian, &spec()).unwrap();
        let d = transfer_probability(&a, &a, 0.1 * r0, TransferMethod::DeltaCollapse, &spec()).unwrap();
        assert!((l.w / d.w - 1.0).abs() < 1e-2);
        let other = AtomModel::new(1.1, 0.01, 1.0).unwrap();
        assert!(transfer_probability(&a, &other, 1e-3, TransferMethod::DeltaCollapse, &spec()).is_err());
    }

    #[test]
    fn split_examples() {
        let (sub, sup) = transfer_split(1.0, 2.0).unwrap();
        assert!((sup - 0.25).abs() < 1e-15);
        assert!((sub + sup - 1.0).abs() < 1e-15);
        assert!(transfer_split(1.0, 1.0 + 1e-9).unwrap().1 > 0.999);
        assert!(matches!(transfer_split(1.0, 0.5), Err(Error::Domain(_))));
    }
}
