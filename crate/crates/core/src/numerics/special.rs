use num_complex::Complex64;

use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const TWO_OVER_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;
const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;
// ln(f64::MAX)
const EXP_LIMIT: f64 = 709.0;

/// erf for complex argument.
///
/// Maclaurin series near the origin and close to the imaginary axis, the
/// Laplace continued fraction for erfc elsewhere in the right half plane.
/// The odd and conjugate symmetries are imposed exactly.
pub fn erf_complex(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("erf of non-finite argument {z}")));
    }
    let flip = z.re < 0.0;
    let w = if flip { -z } else { z };
    let conj = w.im < 0.0;
    let w = if conj { w.conj() } else { w };
    let (x, y) = (w.re, w.im);
    if y * y - x * x > EXP_LIMIT {
        return Err(Error::Overflow(format!(
            "erf({z}) grows like exp({:.1})",
            y * y - x * x
        )));
    }
    let mut v = if x <= 1.0 || w.norm() <= 2.5 {
        erf_maclaurin(w)
    } else {
        Complex64::new(1.0, 0.0) - erfc_continued_fraction(w)?
    };
    if conj {
        v = v.conj();
    }
    if flip {
        v = -v;
    }
    Ok(v)
}

/// erfi(x) = -i erf(ix), real argument.
pub fn erfi(x: f64) -> Result<f64> {
    Ok(erf_complex(Complex64::new(0.0, x))?.im)
}

fn erf_maclaurin(z: Complex64) -> Complex64 {
    // 2/sqrt(pi) * sum (-1)^k z^(2k+1) / (k! (2k+1))
    let z2 = z * z;
    let mut term = z; // (-1)^k z^(2k+1)/k!
    let mut sum = z;
    let mut k = 0.0f64;
    loop {
        k += 1.0;
        term = -term * z2 / k;
        let add = term / (2.0 * k + 1.0);
        sum += add;
        if add.norm() <= 1e-17 * sum.norm() || k > 4000.0 {
            break;
        }
    }
    sum * TWO_OVER_SQRT_PI
}

// Requires Re z > 0; modified Lentz on erfc z = e^{-z^2}/sqrt(pi) / (z + (1/2)/(z + 1/(z + ...))).
fn erfc_continued_fraction(z: Complex64) -> Result<Complex64> {
    let tiny = Complex64::new(1e-300, 0.0);
    let mut f = z;
    let mut c = f;
    let mut d = Complex64::new(0.0, 0.0);
    for n in 1..20_000 {
        let a = n as f64 * 0.5;
        d = z + d * a;
        if d.norm() == 0.0 {
            d = tiny;
        }
        d = d.inv();
        c = z + c.inv() * a;
        if c.norm() == 0.0 {
            c = tiny;
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            return Ok((-z * z).exp() * FRAC_1_SQRT_PI / f);
        }
    }
    Err(Error::NonConvergence(format!(
        "erfc continued fraction at {z}"
    )))
}

/// Real error function.
pub fn erf(x: f64) -> f64 {
    if x.abs() < 2.5 {
        erf_maclaurin(Complex64::new(x, 0.0)).re
    } else {
        x.signum() * (1.0 - erfc(x.abs()))
    }
}

/// Complementary error function, accurate in the far tail.
pub fn erfc(x: f64) -> f64 {
    if x < 0.0 {
        return 2.0 - erfc(-x);
    }
    if x < 2.5 {
        return 1.0 - erf_maclaurin(Complex64::new(x, 0.0)).re;
    }
    if x > 27.3 {
        return 0.0;
    }
    // continued fraction converges quickly here; cannot fail for real x >= 2.5
    erfc_continued_fraction(Complex64::new(x, 0.0))
        .map(|v| v.re)
        .unwrap_or(0.0)
}

/// Dawson's integral F(x) = sqrt(pi)/2 e^{-x^2} erfi(x).
pub fn dawson(x: f64) -> f64 {
    let a = x.abs();
    if a == 0.0 {
        return 0.0;
    }
    let v = if a <= 6.0 {
        // positive-term series for erfi, no cancellation
        let x2 = a * a;
        let mut term = a;
        let mut sum = a;
        let mut k = 0.0;
        loop {
            k += 1.0;
            term *= x2 / k;
            let add = term / (2.0 * k + 1.0);
            sum += add;
            if add < 1e-17 * sum {
                break;
            }
        }
        (-x2).exp() * sum
    } else {
        // 1/(2x) sum (2k-1)!!/(2x^2)^k
        let inv = 1.0 / (2.0 * a * a);
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut k = 1.0;
        loop {
            let next = term * (2.0 * k - 1.0) * inv;
            if next >= term || next < 1e-17 * sum {
                break;
            }
            term = next;
            sum += term;
            k += 1.0;
        }
        sum / (2.0 * a)
    };
    v.copysign(x)
}

/// Exponential integral E1(x) for x > 0.
pub fn e1(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("E1 needs x > 0, got {x}")));
    }
    if x <= 1.0 {
        let mut sum = 0.0;
        let mut term = 1.0;
        let mut k = 1.0;
        loop {
            term *= -x / k;
            let add = term / k;
            sum += add;
            if add.abs() < 1e-17 * sum.abs().max(1e-300) {
                break;
            }
            k += 1.0;
        }
        Ok(-EULER_GAMMA - x.ln() - sum)
    } else {
        Ok(scaled_e1(x)? * (-x).exp())
    }
}

/// e^{x} E1(x) for x > 0, free of overflow for large x.
pub fn scaled_e1(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("E1 needs x > 0, got {x}")));
    }
    if x <= 1.0 {
        return Ok(e1(x)? * x.exp());
    }
    let tiny = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..10_000 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            return Ok(h);
        }
    }
    Err(Error::NonConvergence(format!("E1 continued fraction at {x}")))
}

/// e^{-x} Ei(x) for x > 0.
pub fn scaled_ei(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("Ei needs x > 0, got {x}")));
    }
    if x <= 40.0 {
        let mut term = 1.0;
        let mut sum = 0.0;
        let mut k = 1.0;
        loop {
            term *= x / k;
            let add = term / k;
            sum += add;
            if add < 1e-17 * sum {
                break;
            }
            k += 1.0;
        }
        Ok((EULER_GAMMA + x.ln() + sum) * (-x).exp())
    } else {
        // asymptotic sum k!/x^k, truncated at its smallest term
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut k = 1.0;
        loop {
            let next = term * k / x;
            if next >= term || next < 1e-18 {
                break;
            }
            term = next;
            sum += term;
            k += 1.0;
        }
        Ok(sum / x)
    }
}

/// Exponential integral Ei(x) for x > 0.
pub fn ei(x: f64) -> Result<f64> {
    if x > EXP_LIMIT {
        return Err(Error::Overflow(format!("Ei({x})")));
    }
    Ok(scaled_ei(x)? * x.exp())
}

/// Hyperbolic sine and cosine integrals (Shi, Chi).
///
/// Chi uses ln|x| so it is real on both sides of the origin.
pub fn hyperbolic_integrals(x: f64) -> Result<(f64, f64)> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("Shi/Chi of {x}")));
    }
    if x == 0.0 {
        return Err(Error::Domain("Chi(0) is logarithmically singular".into()));
    }
    let a = x.abs();
    if a > EXP_LIMIT {
        return Err(Error::Overflow(format!("Shi/Chi({x})")));
    }
    let (shi, chi) = if a <= 40.0 {
        shi_chi_series(a)
    } else {
        let ei = scaled_ei(a)? * a.exp();
        let e1 = scaled_e1(a)? * (-a).exp();
        (0.5 * (ei + e1), 0.5 * (ei - e1))
    };
    Ok((shi.copysign(x), chi))
}

/// Shi(x) alone; finite at the origin.
pub fn shi(x: f64) -> Result<f64> {
    if x == 0.0 {
        return Ok(0.0);
    }
    hyperbolic_integrals(x).map(|v| v.0)
}

fn shi_chi_series(a: f64) -> (f64, f64) {
    let a2 = a * a;
    let mut term = a; // a^(2k+1)/(2k+1)!
    let mut shi = a;
    let mut cterm = 1.0; // a^(2k)/(2k)!
    let mut chi_sum = 0.0;
    let mut k = 0.0;
    loop {
        k += 1.0;
        cterm *= a2 / ((2.0 * k - 1.0) * (2.0 * k));
        term *= a2 / ((2.0 * k) * (2.0 * k + 1.0));
        let ds = term / (2.0 * k + 1.0);
        let dc = cterm / (2.0 * k);
        shi += ds;
        chi_sum += dc;
        if ds < 1e-17 * shi && dc < 1e-17 * chi_sum.max(1e-300) {
            break;
        }
    }
    (shi, EULER_GAMMA + a.ln() + chi_sum)
}

/// chi(|b|) sinh(b) - shi(b) cosh(b), evaluated without the cancellation of
/// its two exponentially large pieces.
pub fn hyperbolic_b(b: f64) -> Result<f64> {
    let x = b.abs();
    if x == 0.0 {
        return Ok(0.0);
    }
    if x <= 2.0 {
        let (s, c) = shi_chi_series(x);
        return Ok((c * x.sinh() - s * x.cosh()) * b.signum());
    }
    Ok(-0.5 * (scaled_ei(x)? + scaled_e1(x)?).copysign(b))
}

/// Derivative of [`hyperbolic_b`]: chi(|b|) cosh(b) - shi(b) sinh(b). Even,
/// with a logarithmic singularity at b = 0.
pub fn hyperbolic_a(b: f64) -> Result<f64> {
    let x = b.abs();
    if x == 0.0 {
        return Err(Error::ConeSingularity(
            "logarithmic singularity of chi at 0".into(),
        ));
    }
    if x <= 2.0 {
        let (s, c) = shi_chi_series(x);
        return Ok(c * x.cosh() - s * x.sinh());
    }
    Ok(0.5 * (scaled_ei(x)? - scaled_e1(x)?))
}

/// Step function with the symmetric edge convention theta(0) = 1/2.
pub fn heaviside(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        0.0
    } else {
        0.5
    }
}

/// Sign with sgn(0) = 0.
pub fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// (x cos x - sin x), accurate near x = 0 where the two terms cancel.
pub fn x_cos_minus_sin(x: f64) -> f64 {
    if x.abs() < 0.1 {
        // -x^3/3 + x^5/30 - x^7/840 + x^9/45360 - x^11/3991680
        let x2 = x * x;
        let x3 = x2 * x;
        x3 * (-1.0 / 3.0
            + x2 * (1.0 / 30.0 + x2 * (-1.0 / 840.0 + x2 * (1.0 / 45360.0 - x2 / 3_991_680.0))))
    } else {
        x * x.cos() - x.sin()
    }
}

/// d/dr [sin(w r)/r].
pub fn dr_sin_over_r(omega: f64, r: f64) -> f64 {
    x_cos_minus_sin(omega * r) / (r * r)
}
