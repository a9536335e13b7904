use std::f64::consts::PI;

use num_complex::Complex64;

use super::quadrature::{
    integrate_oscillatory_tail, integrate_partition, QuadratureSpec, Scalar,
};
use crate::error::{invalid, Error, Result};

/// Normalization prefactor of a Fourier transform.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Prefactor {
    One,
    InvTwoPi,
    InvSqrtTwoPi,
}

impl Prefactor {
    pub fn value(self) -> f64 {
        match self {
            Prefactor::One => 1.0,
            Prefactor::InvTwoPi => 1.0 / (2.0 * PI),
            Prefactor::InvSqrtTwoPi => 1.0 / (2.0 * PI).sqrt(),
        }
    }

    fn partner(self) -> Self {
        match self {
            Prefactor::One => Prefactor::InvTwoPi,
            Prefactor::InvTwoPi => Prefactor::One,
            Prefactor::InvSqrtTwoPi => Prefactor::InvSqrtTwoPi,
        }
    }
}

/// Forward kernel `prefactor * exp(exponent_sign * i w t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FtConvention {
    pub exponent_sign: i8,
    pub prefactor: Prefactor,
}

impl FtConvention {
    /// Kernel e^{-iwt}, prefactor 1: the convention of the propagators.
    pub const PROPAGATOR: Self = Self {
        exponent_sign: -1,
        prefactor: Prefactor::One,
    };
    /// Kernel e^{-iwt}, prefactor 1/2pi: switching functions and currents.
    pub const SWITCHING: Self = Self {
        exponent_sign: -1,
        prefactor: Prefactor::InvTwoPi,
    };

    pub fn new(exponent_sign: i8, prefactor: Prefactor) -> Result<Self> {
        if exponent_sign != 1 && exponent_sign != -1 {
            return Err(invalid("exponent_sign", "must be +1 or -1"));
        }
        Ok(Self {
            exponent_sign,
            prefactor,
        })
    }

    /// The transform that undoes this one.
    pub fn inverse(self) -> Self {
        Self {
            exponent_sign: -self.exponent_sign,
            prefactor: self.prefactor.partner(),
        }
    }

    pub fn all() -> [Self; 6] {
        let mut out = [Self::PROPAGATOR; 6];
        let mut i = 0;
        for s in [-1, 1] {
            for p in [Prefactor::One, Prefactor::InvTwoPi, Prefactor::InvSqrtTwoPi] {
                out[i] = Self {
                    exponent_sign: s,
                    prefactor: p,
                };
                i += 1;
            }
        }
        out
    }

    pub fn label(&self) -> String {
        let p = match self.prefactor {
            Prefactor::One => "1",
            Prefactor::InvTwoPi => "1/(2pi)",
            Prefactor::InvSqrtTwoPi => "1/sqrt(2pi)",
        };
        let s = if self.exponent_sign < 0 { "-" } else { "+" };
        format!("kernel exp({s}i w t), prefactor {p}")
    }
}

/// Damping windows used to reach slowly decaying transforms, extrapolated
/// to zero damping.
pub const WINDOW_LADDER: [f64; 3] = [1e-2, 5e-3, 2.5e-3];

/// Options for [`ft_numeric_with`].
#[derive(Clone, Debug, Default)]
pub struct FtOptions {
    /// Kinks or jumps of the integrand; the integration range is cut there.
    pub breakpoints: Vec<f64>,
    /// Damping exp(-eps |t|) applied to the integrand.
    pub window: Option<f64>,
}

/// prefactor * int dt exp(sign i w t) f(t), for integrands that decay.
pub fn ft_numeric<T: Scalar, F: Fn(f64) -> T + Sync>(
    f: F,
    omega: f64,
    conv: FtConvention,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    ft_numeric_with(f, omega, conv, spec, &FtOptions::default())
}

/// [`ft_numeric`] with breakpoints and an optional damping window.
pub fn ft_numeric_with<T: Scalar, F: Fn(f64) -> T + Sync>(
    f: F,
    omega: f64,
    conv: FtConvention,
    spec: &QuadratureSpec,
    opts: &FtOptions,
) -> Result<Complex64> {
    spec.validate()?;
    if !omega.is_finite() {
        return Err(invalid("omega", "must be finite"));
    }
    let s = conv.exponent_sign as f64;
    let g = |t: f64| -> Complex64 {
        let mut v = f(t).to_complex() * Complex64::new(0.0, s * omega * t).exp();
        if let Some(eps) = opts.window {
            v *= (-eps * t.abs()).exp();
        }
        v
    };
    let freq = omega
        .abs()
        .max(spec.oscillation_frequency_hint.unwrap_or(0.0));
    let mut bps = opts.breakpoints.clone();
    if bps.is_empty() {
        bps.push(0.0);
    }
    bps.sort_by(f64::total_cmp);
    bps.dedup();
    let lo = bps[0];
    let hi = *bps.last().unwrap();
    let mut total = Complex64::new(0.0, 0.0);
    if hi > lo {
        let mid = refine_partition(&bps, freq);
        total += integrate_partition(&g, &mid, spec)?.value;
    }
    total += half_line(&g, hi, 1.0, freq, opts.window, spec)?;
    total += half_line(&g, lo, -1.0, freq, opts.window, spec)?;
    Ok(total * conv.prefactor.value())
}

// Partition with extra cuts every half period so no piece holds many oscillations.
fn refine_partition(bps: &[f64], freq: f64) -> Vec<f64> {
    let mut out = vec![bps[0]];
    for w in bps.windows(2) {
        let (a, b) = (w[0], w[1]);
        if freq > 0.0 {
            let h = PI / freq;
            let n = ((b - a) / h).ceil().max(1.0) as usize;
            for i in 1..n {
                out.push(a + (b - a) * i as f64 / n as f64);
            }
        }
        out.push(b);
    }
    out
}

// Cuts of [a, a + dir*h] at widths 1, 1, 2, 4, ... so a long first panel
// still resolves structure of unit size next to a.
fn graded_panel(a: f64, dir: f64, h: f64) -> Vec<f64> {
    let mut offs = vec![0.0];
    let mut step = 1.0;
    let mut x = 0.0;
    while x + step < h {
        x += step;
        offs.push(x);
        if x >= 2.0 {
            step *= 2.0;
        }
    }
    offs.push(h);
    let mut pts: Vec<f64> = offs.iter().map(|o| a + dir * o).collect();
    if dir < 0.0 {
        pts.reverse();
    }
    pts
}

/// Integral of g over [a, a + dir*inf).
pub(crate) fn half_line(
    g: &dyn Fn(f64) -> Complex64,
    a: f64,
    dir: f64,
    freq: f64,
    window: Option<f64>,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    match window {
        Some(eps) => {
            if !(eps > 0.0) {
                return Err(invalid("window", "must be > 0"));
            }
            // integrate panel by panel out to where the window is below 1e-17
            let length = 40.0 / eps;
            let h = if freq > 0.0 { PI / freq } else { 1.0 / eps };
            let n = (length / h).ceil() as usize;
            let piece_spec = QuadratureSpec {
                abs_tol: spec.abs_tol / (n as f64).sqrt().max(1.0),
                ..*spec
            };
            let mut total = integrate_partition(g, &graded_panel(a, dir, h), &piece_spec)?.value;
            for k in 1..n {
                let x0 = a + dir * h * k as f64;
                let x1 = x0 + dir * h;
                let (p, q) = if dir > 0.0 { (x0, x1) } else { (x1, x0) };
                total += integrate_partition(g, &[p, q], &piece_spec)?.value;
            }
            Ok(total)
        }
        None => {
            if freq > 0.0 {
                let h = PI / freq;
                let head = integrate_partition(g, &graded_panel(a, dir, h), spec)?.value;
                Ok(head + integrate_oscillatory_tail(g, a + dir * h, dir, h, spec)?.value)
            } else {
                let pts = if dir > 0.0 {
                    [a, f64::INFINITY]
                } else {
                    [f64::NEG_INFINITY, a]
                };
                Ok(integrate_partition(g, &pts, spec)?.value)
            }
        }
    }
}

/// Neville extrapolation of samples (x_i, y_i) to x = 0.
pub fn extrapolate_to_zero(xs: &[f64], ys: &[Complex64]) -> Result<Complex64> {
    if xs.len() != ys.len() || xs.is_empty() {
        return Err(invalid("samples", "need matching, non-empty ladders"));
    }
    let mut p = ys.to_vec();
    let n = xs.len();
    for m in 1..n {
        for i in 0..n - m {
            let (xi, xj) = (xs[i], xs[i + m]);
            if xi == xj {
                return Err(Error::Degenerate("repeated extrapolation abscissa".into()));
            }
            p[i] = (p[i + 1] * xi - p[i] * xj) / (xi - xj);
        }
    }
    Ok(p[0])
}

/// Windowed transform at each damping of [`WINDOW_LADDER`], extrapolated to
/// zero damping. For distributions that do not decay (constant or sign-like
/// tails).
pub fn ft_windowed_extrapolated<T: Scalar, F: Fn(f64) -> T + Sync>(
    f: F,
    omega: f64,
    conv: FtConvention,
    spec: &QuadratureSpec,
    breakpoints: &[f64],
) -> Result<Complex64> {
    let mut ys = Vec::with_capacity(WINDOW_LADDER.len());
    for eps in WINDOW_LADDER {
        let opts = FtOptions {
            breakpoints: breakpoints.to_vec(),
            window: Some(eps),
        };
        ys.push(ft_numeric_with(&f, omega, conv, spec, &opts)?);
    }
    extrapolate_to_zero(&WINDOW_LADDER, &ys)
}

/// 3D transform of a spherically symmetric function,
/// int 4 pi r^2 sinc(k r) f(r) dr, windowed by exp(-eps r) and extrapolated.
/// `freq_hint` is the largest oscillation frequency of f in r.
pub fn radial_ft_windowed<T: Scalar, F: Fn(f64) -> T + Sync>(
    f: F,
    k: f64,
    freq_hint: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    if !(k > 0.0) {
        return Err(invalid("k", "must be > 0"));
    }
    let freq = k + freq_hint.abs();
    let mut ys = Vec::with_capacity(WINDOW_LADDER.len());
    for eps in WINDOW_LADDER {
        let g = |r: f64| -> Complex64 {
            f(r).to_complex() * (4.0 * PI * r * (k * r).sin() / k * (-eps * r).exp())
        };
        ys.push(half_line(&g, 0.0, 1.0, freq, Some(eps), spec)?);
    }
    extrapolate_to_zero(&WINDOW_LADDER, &ys)
}
