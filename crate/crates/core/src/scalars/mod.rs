//! Exact scalars: rationals, Gaussian rationals and symbolic volume units.

mod gaussian;
mod rational;
mod symbolic;

pub use gaussian::GaussianRational;
pub use rational::Rational;
pub use symbolic::{sphere_volume, SymbolicScalar, Unit};
