//! Near-field singular functions of the photon Green function, switching
//! functions, and three scenario calculators built on them.

pub mod engine;
pub mod error;
pub mod ftir;
pub mod interactions;
pub mod numerics;
pub mod parallel;
pub mod point_charge;
pub mod propagators;
pub mod switching;

pub use error::{Error, Result};
