use std::f64::consts::PI;

use nearfield_core::numerics::{
    erf_complex, ft_numeric, ft_numeric_with, pair_with_test_function, Distribution, FtConvention, FtOptions, QuadratureSpec,
    TestFunction,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn erf_is_odd(rho in 0.0..3.0f64, theta in 0.0..(2.0 * PI)) {
        let z = Complex64::from_polar(rho, theta);
        let s = erf_complex(z).unwrap() + erf_complex(-z).unwrap();
        prop_assert!(s.norm() < 1e-14, "z = {z}, residue {}", s.norm());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ft_is_linear(
        a in -2.0..2.0f64,
        b in -2.0..2.0f64,
        shift in -1.0..1.0f64,
        width in 0.5..2.0f64,
        omega in -4.0..4.0f64,
    ) {
        let conv = FtConvention::SWITCHING;
        let f = |t: f64| (-(t - shift) * (t - shift)).exp();
        let g = |t: f64| (-width * t * t).exp() * t.cos();
        let lhs = ft_numeric(|t| a * f(t) + b * g(t), omega, conv, &spec()).unwrap();
        let rhs = a * ft_numeric(f, omega, conv, &spec()).unwrap()
            + b * ft_numeric(g, omega, conv, &spec()).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-10, "diff {}", (lhs - rhs).norm());
    }

    #[test]
    fn delta_pairing_matches_closed_form(
        amp in 0.2..2.0f64,
        t0 in -1.5..1.5f64,
        s in 0.3..2.0f64,
        r in 0.2..3.0f64,
    ) {
        let phi = TestFunction::gaussian(amp, t0, s).unwrap();
        let g = |t: f64| amp * (-(t - t0).powi(2) / (2.0 * s * s)).exp();
        let expected = (g(r) - g(-r)) / (4.0 * PI * r);
        let got = pair_with_test_function(Distribution::D, r, &phi, &spec()).unwrap();
        prop_assert!((got - expected).abs() < 1e-10);
    }
}

// inverse of forward, computed numerically at both stages
#[test]
fn round_trip_every_convention() {
    let f = |t: f64| (-t * t).exp();
    for conv in FtConvention::all() {
        let inv = conv.inverse();
        for t in [0.0, 0.7, -1.3] {
            // the forward transform is below e^{-400} past |w| = 40
            let inner = |w: f64| {
                if w.abs() > 40.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    ft_numeric(f, w, conv, &spec()).unwrap()
                }
            };
            let opts = FtOptions { breakpoints: vec![-40.0, 0.0, 40.0], window: None };
            let back = ft_numeric_with(inner, t, inv, &spec(), &opts).unwrap();
            assert!(
                (back - Complex64::from(f(t))).norm() < 1e-8,
                "{} at t = {t}: {back}",
                conv.label()
            );
        }
    }
}
