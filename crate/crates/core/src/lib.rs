//! Exact energy computations for positive-energy weights over the seven
//! locally affine root systems.

pub mod affinisation;
pub mod cones;
pub mod energy;
pub mod error;
pub mod oracle;
pub mod profiles;
pub mod rootdata;
pub mod scalar;
pub mod weyl;

pub use error::{Error, Result};
pub use scalar::Rational;
