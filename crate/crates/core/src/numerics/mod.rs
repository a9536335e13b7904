//! Special functions, quadrature and transform oracles.

pub mod fit;
pub mod fourier;
pub mod pairing;
pub mod quadrature;
pub mod special;

pub use fit::{fit_power_law, PowerLawFit};
pub use fourier::{
    extrapolate_to_zero, ft_numeric, ft_numeric_with, ft_windowed_extrapolated,
    radial_ft_windowed, FtConvention, FtOptions, Prefactor, WINDOW_LADDER,
};
pub use pairing::{pair_with_test_function, Distribution, TestFunction};
pub use quadrature::{
    integrate, integrate_oscillatory_tail, integrate_partition, integrate_with_breaks,
    wynn_epsilon, Quadrature, QuadratureSpec, Scalar,
};
pub use special::{
    dawson, e1, ei, erf, erf_complex, erfc, erfi, heaviside, hyperbolic_a, hyperbolic_b,
    hyperbolic_integrals, sgn, shi, EULER_GAMMA,
};
