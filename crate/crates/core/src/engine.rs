//! Near-field response kernel, its convolution with a generalized current,
//! the effective charge density, and the E/H commutator kernels.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{invalid, require_positive, Error, Result};
use crate::numerics::quadrature::{integrate_partition, QuadratureSpec};
use crate::numerics::special::{dr_sin_over_r, heaviside};
use crate::propagators::{norm, unit_vector, Region, SpacetimePoint, TensorBlock};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

type Amplitude = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;
type Profile = Arc<dyn Fn(f64, f64) -> Complex64 + Send + Sync>;

/// Generalized current J = j_mu d_mu g in the (w, r) representation.
#[derive(Clone)]
pub enum GeneralizedCurrent {
    Zero,
    /// a(w) delta(r).
    PointSource(Amplitude),
    /// Spherically symmetric J(w, r), vanishing beyond `support`.
    ClosedForm { profile: Profile, support: f64 },
    /// Samples of J(r) at the evaluation frequency, linearly interpolated.
    /// The grid starts at r = 0 and the last sample must be zero.
    RadialGrid { r: Vec<f64>, values: Vec<Complex64> },
}

impl std::fmt::Debug for GeneralizedCurrent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Zero => write!(f, "Zero"),
            Self::PointSource(_) => write!(f, "PointSource"),
            Self::ClosedForm { support, .. } => write!(f, "ClosedForm {{ support: {support} }}"),
            Self::RadialGrid { r, .. } => write!(f, "RadialGrid {{ {} samples }}", r.len()),
        }
    }
}

impl GeneralizedCurrent {
    pub fn radial_grid(r: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if r.len() != values.len() || r.len() < 2 {
            return Err(invalid("grid", "need at least two (r, J) samples of equal length"));
        }
        if r[0] != 0.0 {
            return Err(Error::UnsupportedDomain("radial grid must start at r = 0".into()));
        }
        if r.windows(2).any(|w| !(w[1] > w[0]) || !w[1].is_finite()) {
            return Err(invalid("grid", "radii must be strictly increasing and finite"));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(invalid("grid", "current samples must be finite"));
        }
        if *values.last().unwrap() != ZERO {
            return Err(Error::UnsupportedDomain(
                "current does not vanish at the end of the grid; support not covered".into(),
            ));
        }
        Ok(Self::RadialGrid { r, values })
    }

    fn profile_at(&self, omega: f64, rp: f64) -> Complex64 {
        match self {
            Self::ClosedForm { profile, support } => {
                if rp <= *support {
                    profile(omega, rp)
                } else {
                    ZERO
                }
            }
            Self::RadialGrid { r, values } => interpolate(r, values, rp),
            _ => ZERO,
        }
    }

    fn nodes(&self) -> Vec<f64> {
        match self {
            Self::ClosedForm { support, .. } => vec![0.0, *support],
            Self::RadialGrid { r, .. } => r.clone(),
            _ => vec![],
        }
    }
}

fn interpolate(r: &[f64], v: &[Complex64], x: f64) -> Complex64 {
    if x < r[0] || x > *r.last().unwrap() {
        return ZERO;
    }
    let i = r.partition_point(|&ri| ri <= x).clamp(1, r.len() - 1);
    let (x0, x1) = (r[i - 1], r[i]);
    let s = (x - x0) / (x1 - x0);
    v[i - 1] * (1.0 - s) + v[i] * s
}

fn check_mixed(omega: f64, r: f64) -> Result<()> {
    if !omega.is_finite() {
        return Err(invalid("omega", "must be finite"));
    }
    require_positive("r", r)?;
    if omega == 0.0 {
        return Err(Error::Pole("omega = 0 in the near-field kernel".into()));
    }
    Ok(())
}

/// K(w, r) = theta(-w)/(2 pi i w) d_r (sin(w r)/r).
pub fn kernel_mixed(omega: f64, r: f64) -> Result<Complex64> {
    check_mixed(omega, r)?;
    if omega > 0.0 {
        return Ok(ZERO);
    }
    Ok(kernel_unchecked(omega, r))
}

fn kernel_unchecked(omega: f64, r: f64) -> Complex64 {
    // 1/(2 pi i w) = -i/(2 pi w)
    Complex64::new(0.0, -dr_sin_over_r(omega, r) / (2.0 * PI * omega))
}

fn check_momentum(omega: f64, k: f64) -> Result<()> {
    if !omega.is_finite() {
        return Err(invalid("omega", "must be finite"));
    }
    require_positive("k", k)?;
    if omega == 0.0 {
        return Err(Error::Pole("omega = 0 in the near-field kernel".into()));
    }
    if k == omega.abs() {
        return Err(Error::ConeSingularity(format!("k = |omega| = {k}")));
    }
    Ok(())
}

/// Momentum-space kernel as printed:
/// theta(-w)/((2 pi)^3 i) {4/((k - i0)^2 - w^2) - (1/(w k)) ln((k - w)/(k + w))},
/// with the principal-value log and +i pi/(|w| k) when k < |w|.
pub fn kernel_momentum(omega: f64, k: f64) -> Result<Complex64> {
    check_momentum(omega, k)?;
    if omega > 0.0 {
        return Ok(ZERO);
    }
    let log = ((k - omega) / (k + omega)).abs().ln();
    let mut brace = Complex64::from(4.0 / (k * k - omega * omega) - log / (omega * k));
    if k < omega.abs() {
        brace += I * PI / (omega.abs() * k);
    }
    Ok(brace / (I * (2.0 * PI).powi(3)))
}

/// Closed form of the 3D radial transform int 4 pi r^2 sinc(k r) K(w, r) dr:
/// theta(-w)/i {2/(k^2 - w^2) + (1/(w k)) ln|(k - w)/(k + w)|}.
pub fn kernel_momentum_exact(omega: f64, k: f64) -> Result<Complex64> {
    check_momentum(omega, k)?;
    if omega > 0.0 {
        return Ok(ZERO);
    }
    let log = ((k - omega) / (k + omega)).abs().ln();
    Ok(-I * (2.0 / (k * k - omega * omega) + log / (omega * k)))
}

/// Radial near-field strength E(w, r) = (K convolved with J)(r).
pub fn field_from_current(
    j: &GeneralizedCurrent,
    omega: f64,
    r: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    check_mixed(omega, r)?;
    if omega > 0.0 {
        return Ok(ZERO);
    }
    let c = Complex64::new(0.0, -1.0 / (2.0 * PI * omega));
    match j {
        GeneralizedCurrent::Zero => Ok(ZERO),
        GeneralizedCurrent::PointSource(a) => Ok(a(omega) * kernel_unchecked(omega, r)),
        _ => {
            // int_{|r - r'|}^{r + r'} d_s(sin(ws)/s) (s^2 + r^2 - r'^2) ds, by parts
            let w = omega;
            let inner = |rp: f64| -> f64 {
                let a = r * r - rp * rp;
                let prim = |s: f64| {
                    let g = if s == 0.0 { w } else { (w * s).sin() / s };
                    g * (s * s + a) + 2.0 * (w * s).cos() / w
                };
                prim(r + rp) - prim((r - rp).abs())
            };
            let f = |rp: f64| j.profile_at(w, rp) * (rp * inner(rp));
            let q = radial_integral(&f, j, r, w, spec)?;
            Ok(c * q * (PI / (r * r)))
        }
    }
}

/// Effective charge density rho(w, r) = (1/4 pi) d_t D^(-) convolved with J,
/// with d_t -> +i w under the e^{-i w t} forward kernel.
pub fn charge_density_from_current(
    j: &GeneralizedCurrent,
    omega: f64,
    r: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    if !omega.is_finite() {
        return Err(invalid("omega", "must be finite"));
    }
    require_positive("r", r)?;
    // (i w / 4 pi) theta(-w) (1/(2 pi i)) = theta(-w) w / (8 pi^2)
    let c = heaviside(-omega) * omega / (8.0 * PI * PI);
    if c == 0.0 {
        return Ok(ZERO);
    }
    match j {
        GeneralizedCurrent::Zero => Ok(ZERO),
        GeneralizedCurrent::PointSource(a) => Ok(a(omega) * c * ((omega * r).sin() / r)),
        _ => {
            let w = omega;
            // int_{|r - r'|}^{r + r'} sin(w s) ds
            let inner = |rp: f64| ((w * (r - rp)).cos() - (w * (r + rp)).cos()) / w;
            let f = |rp: f64| j.profile_at(w, rp) * (rp * inner(rp));
            let q = radial_integral(&f, j, r, w, spec)?;
            Ok(q * (c * 2.0 * PI / r))
        }
    }
}

fn radial_integral(
    f: &dyn Fn(f64) -> Complex64,
    j: &GeneralizedCurrent,
    r: f64,
    omega: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    let mut pts = j.nodes();
    let hi = *pts.last().unwrap();
    if r < hi {
        pts.push(r);
    }
    // cut long ranges at half periods of the kernel
    let h = PI / omega.abs();
    let mut x = h;
    while x < hi {
        pts.push(x);
        x += h;
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    Ok(integrate_partition(f, &pts, spec)?.value)
}

/// Field-field or field-magnetic commutator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommutatorPair {
    EE,
    EH,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CommutatorValue {
    Tensor(TensorBlock),
    Vector([Complex64; 3]),
}

/// Closed-form commutator kernels from D_N = -t/(4 pi r) in |t| < r:
/// EE = (1/4 pi i)(-t/(4 pi r^3))(3 e e - delta), EH = (1/4 pi i) e/(4 pi r^2).
pub fn commutator_kernel(pair: CommutatorPair, t: f64, r_vec: [f64; 3]) -> Result<CommutatorValue> {
    let (p, e): (SpacetimePoint, [f64; 3]) = SpacetimePoint::from_vector(t, r_vec)?;
    let r = norm(r_vec);
    if p.t.abs() >= r {
        return Err(Error::ConeSingularity(format!(
            "closed form needs |t| < r, got t = {t}, r = {r}"
        )));
    }
    let pre = Complex64::new(0.0, -1.0 / (4.0 * PI));
    let e = unit_vector(e)?;
    Ok(match pair {
        CommutatorPair::EE => {
            let s = -t / (4.0 * PI * r.powi(3));
            let mut values = [[ZERO; 3]; 3];
            for i in 0..3 {
                for k in 0..3 {
                    let m = 3.0 * e[i] * e[k] - if i == k { 1.0 } else { 0.0 };
                    values[i][k] = pre * s * m;
                }
            }
            CommutatorValue::Tensor(TensorBlock {
                values,
                region: Region::NF,
                e,
            })
        }
        CommutatorPair::EH => {
            let s = 1.0 / (4.0 * PI * r * r);
            CommutatorValue::Vector([pre * s * e[0], pre * s * e[1], pre * s * e[2]])
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::fourier::radial_ft_windowed;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_mixed(1.0, 0.7).unwrap(), ZERO);
        let v = kernel_mixed(-1.0, 0.1).unwrap();
        // leading order r/(6 pi); the O(r^3) term is r^2/10 relative
        assert!((v.im - 0.1 / (6.0 * PI)).abs() < 1e-5 && v.re == 0.0);
        let direct = (0.1f64.sin() / 0.01 - 0.1f64.cos() / 0.1) / (2.0 * PI);
        assert!((v.im - direct).abs() < 1e-15);
        let v = kernel_mixed(-PI, 1.0).unwrap();
        assert!((v.im - 1.0 / (2.0 * PI)).abs() < 1e-15, "{v}");
        assert!(matches!(kernel_mixed(0.0, 1.0), Err(Error::Pole(_))));
    }

    #[test]
    fn momentum_examples() {
        let v = kernel_momentum(-1.0, 2.0).unwrap();
        let want = -(4.0 / 3.0 + 3f64.ln() / 2.0) / (2.0 * PI).powi(3);
        assert!((v.im - want).abs() < 1e-16 && v.re == 0.0);
        assert_eq!(kernel_momentum(1.0, 2.0).unwrap(), ZERO);
        assert!(matches!(kernel_momentum(-2.0, 2.0), Err(Error::ConeSingularity(_))));
        let inside = kernel_momentum(-2.0, 1.0).unwrap();
        assert!((inside.re - PI / 2.0 / (2.0 * PI).powi(3)).abs() < 1e-16);
    }

    #[test]
    fn exact_momentum_kernel_matches_numeric_transform() {
        for &(w, k) in &[(-1.0, 2.0), (-1.0, 0.5), (-2.0, 3.0)] {
            let num = radial_ft_windowed(|r| kernel_mixed(w, r).unwrap(), k, w, &spec()).unwrap();
            let ex = kernel_momentum_exact(w, k).unwrap();
            assert!((num - ex).norm() / ex.norm() < 1e-5, "({w},{k}): {num} vs {ex}");
        }
    }

    #[test]
    fn point_source_and_zero() {
        let a = Complex64::new(0.3, -1.2);
        let j = GeneralizedCurrent::PointSource(Arc::new(move |_| a));
        let v = field_from_current(&j, -1.5, 0.8, &spec()).unwrap();
        assert!((v - a * kernel_mixed(-1.5, 0.8).unwrap()).norm() < 1e-16);
        let z = field_from_current(&GeneralizedCurrent::Zero, -1.5, 0.8, &spec()).unwrap();
        assert_eq!(z, ZERO);
        let z = charge_density_from_current(&GeneralizedCurrent::Zero, -1.5, 0.8, &spec()).unwrap();
        assert_eq!(z, ZERO);
    }

    // Mean-value property of Helmholtz solutions: convolving a regular
    // solution with a radial J multiplies it by int 4 pi r^2 J sinc(w r) dr.
    fn sinc_moment(profile: &dyn Fn(f64) -> f64, w: f64, a: f64) -> f64 {
        crate::numerics::integrate(
            |r: f64| 4.0 * PI * r * (w * r).sin() / w * profile(r),
            0.0,
            a,
            &spec(),
        )
        .unwrap()
        .value
    }

    #[test]
    fn spread_current_matches_mean_value_oracle() {
        let (w, a) = (-1.3, 0.9);
        let shape = move |r: f64| (1.0 - (r / a).powi(2)).powi(2);
        let j = GeneralizedCurrent::ClosedForm {
            profile: Arc::new(move |_, r| Complex64::from(shape(r))),
            support: a,
        };
        let m = sinc_moment(&shape, w, a);
        for r in [0.2, 0.9, 1.7, 4.0] {
            let e = field_from_current(&j, w, r, &spec()).unwrap();
            let want = kernel_mixed(w, r).unwrap() * m;
            assert!((e - want).norm() < 1e-11 * want.norm().max(1e-3), "r = {r}: {e} vs {want}");
            let rho = charge_density_from_current(&j, w, r, &spec()).unwrap();
            let want = w / (8.0 * PI * PI) * (w * r).sin() / r * m;
            assert!((rho.re - want).abs() < 1e-12 && rho.im == 0.0, "r = {r}");
        }
    }

    #[test]
    fn grid_current_validation() {
        let r = vec![0.0, 0.5, 1.0];
        let ok = GeneralizedCurrent::radial_grid(r.clone(), vec![1.0.into(), 0.5.into(), ZERO]);
        assert!(ok.is_ok());
        let open = GeneralizedCurrent::radial_grid(r.clone(), vec![1.0.into(); 3]);
        assert!(matches!(open, Err(Error::UnsupportedDomain(_))));
        let shifted = GeneralizedCurrent::radial_grid(vec![0.1, 0.5, 1.0], vec![ZERO; 3]);
        assert!(matches!(shifted, Err(Error::UnsupportedDomain(_))));
        let unsorted = GeneralizedCurrent::radial_grid(vec![0.0, 0.5, 0.5], vec![ZERO; 3]);
        assert!(unsorted.is_err());
    }

    #[test]
    fn grid_current_matches_mean_value_oracle() {
        // a piecewise-linear profile is represented exactly by its samples
        let r: Vec<f64> = (0..=8).map(|i| i as f64 * 0.25).collect();
        let vals: Vec<Complex64> = r
            .iter()
            .map(|&x| Complex64::new(2.0 - x, 0.5 * (2.0 - x)))
            .collect();
        let j = GeneralizedCurrent::radial_grid(r, vals).unwrap();
        let w = -0.8;
        let m = sinc_moment(&|x| 2.0 - x, w, 2.0);
        let e = field_from_current(&j, w, 1.1, &spec()).unwrap();
        let want = kernel_mixed(w, 1.1).unwrap() * Complex64::new(m, 0.5 * m);
        assert!((e - want).norm() < 1e-11, "{e} vs {want}");
    }

    #[test]
    fn commutator_examples() {
        match commutator_kernel(CommutatorPair::EE, 0.0, [0.3, 0.4, 0.5]).unwrap() {
            CommutatorValue::Tensor(b) => assert!(b.frobenius_norm_sq() == 0.0),
            _ => panic!(),
        }
        match commutator_kernel(CommutatorPair::EH, 0.5, [0.0, 0.0, 1.0]).unwrap() {
            CommutatorValue::Vector(v) => {
                assert!(v[0].norm() == 0.0 && v[1].norm() == 0.0);
                assert!((v[2].im + 1.0 / (16.0 * PI * PI)).abs() < 1e-16);
            }
            _ => panic!(),
        }
        match commutator_kernel(CommutatorPair::EE, 0.5, [0.0, 0.0, 1.0]).unwrap() {
            CommutatorValue::Tensor(b) => assert!(b.trace().norm() < 1e-16),
            _ => panic!(),
        }
        assert!(matches!(
            commutator_kernel(CommutatorPair::EE, 1.0, [0.0, 0.0, 1.0]),
            Err(Error::ConeSingularity(_))
        ));
    }

    #[test]
    fn commutator_matches_finite_differences() {
        // (1/4 pi i) d_i d_j D_N with D_N from the canonical closed form
        let (t, x0) = (0.2, [0.4, -0.3, 0.6]);
        let dn = |x: [f64; 3]| crate::propagators::d_n_canonical(t, norm(x));
        let h = 1e-4;
        let b = match commutator_kernel(CommutatorPair::EE, t, x0).unwrap() {
            CommutatorValue::Tensor(b) => b,
            _ => unreachable!(),
        };
        for i in 0..3 {
            for k in 0..3 {
                let at = |si: f64, sk: f64| {
                    let mut y = x0;
                    y[i] += si;
                    y[k] += sk;
                    dn(y)
                };
                let d2 = (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4.0 * h * h);
                let want = -d2 / (4.0 * PI);
                assert!((b.values[i][k].im - want).abs() < 1e-7, "{i}{k}");
            }
        }
    }
}
