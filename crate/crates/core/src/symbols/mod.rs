//! Flat-point symbol integrands, sphere moments and polynomial-form checks.

mod integrand;
mod moments;
mod polyform;

pub use integrand::{interior_integrand, trace_integrate, XiPolynomialOp};
pub use moments::{sphere_moment, sphere_moment_ratio};
pub use polyform::{flat_commutator_check, CommutatorReport, PolyForm};
