use std::f64::consts::PI;

use nearfield_core::numerics::{
    pair_with_test_function, Distribution, QuadratureSpec, TestFunction,
};
use nearfield_core::propagators::{
    d_n_canonical, pauli_projector, singular_mixed, tensor_decompose_time, Block, MixedKind,
    MixedPoint, Region, Selection, SignConvention, SpacetimePoint,
};
use proptest::prelude::*;

fn unit(theta: f64, phi: f64) -> [f64; 3] {
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn interior_slope_is_minus_one_over_four_pi_r(r in 0.1..10.0f64, frac in -0.95..0.95f64) {
        let t = frac * r;
        let h = 1e-4 * r;
        let fd = (d_n_canonical(t + h, r) - d_n_canonical(t - h, r)) / (2.0 * h);
        let want = -1.0 / (4.0 * PI * r);
        prop_assert!((fd - want).abs() < 1e-8 * want.abs().max(1.0));
    }

    #[test]
    fn exterior_is_flat_in_time(r in 0.1..10.0f64, frac in 1.05..20.0f64, sign in prop::bool::ANY) {
        let t = if sign { frac * r } else { -frac * r };
        let h = 1e-3 * r;
        let fd = (d_n_canonical(t + h, r) - d_n_canonical(t - h, r)) / (2.0 * h);
        prop_assert!(fd.abs() < 1e-12);
    }

    #[test]
    fn mixed_near_times_minus_w2_is_pauli_jordan(w in -20.0..20.0f64, r in 0.01..10.0f64) {
        prop_assume!(w.abs() > 1e-3);
        let p = MixedPoint::new(w, r).unwrap();
        let dn = singular_mixed(MixedKind::DN, p).unwrap();
        let d = singular_mixed(MixedKind::D, p).unwrap();
        let lhs = dn * (-w * w);
        prop_assert!((lhs - d).norm() <= 1e-14 * d.norm().max(1e-300) + 1e-300);
    }

    #[test]
    fn pauli_projector_traceless_symmetric(theta in 0.0..PI, phi in 0.0..(2.0 * PI)) {
        let p = pauli_projector(unit(theta, phi));
        let tr = p[0][0] + p[1][1] + p[2][2];
        prop_assert!(tr.abs() < 1e-14);
        for i in 0..3 {
            for k in 0..3 {
                prop_assert!((p[i][k] - p[k][i]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn intermediate_block_vanishes_outside_cone(
        r in 0.1..5.0f64,
        frac in 1.001..10.0f64,
        theta in 0.0..PI,
        sign in prop::bool::ANY,
    ) {
        let t = if sign { frac * r } else { -frac * r };
        let p = SpacetimePoint::new(t, r).unwrap();
        let e = unit(theta, 0.3);
        let blocks = tensor_decompose_time(p, e, Selection::One(Region::IF), SignConvention::Canonical).unwrap();
        match &blocks[0] {
            Block::Finite(b) => prop_assert_eq!(b.frobenius_norm_sq(), 0.0),
            other => prop_assert!(false, "unexpected block {:?}", other),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn second_derivative_pairing_gives_delta(
        amp in 0.2..2.0f64,
        t0 in -2.0..2.0f64,
        s in 0.3..1.5f64,
        ri in 0usize..3,
    ) {
        let r = [0.5, 1.0, 2.0][ri];
        let spec = QuadratureSpec::default();
        let phi = TestFunction::gaussian(amp, t0, s).unwrap();
        let lhs = pair_with_test_function(Distribution::DN, r, &phi.second_derivative(), &spec).unwrap();
        let rhs = pair_with_test_function(Distribution::D, r, &phi, &spec).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-8, "diff {}", lhs - rhs);
    }
}
