//! Boundary terms: rational functions of `ξ_n`, the `π⁺` projection,
//! residue integration along the real line, and the two boundary densities.

mod density;
mod rational;

pub use density::{
    boundary_contraction, boundary_density, boundary_line_integrals, closed_boundary_coefficient, principal_symbol, symbol_derivative,
    symbol_plus, verify_boundary, verify_boundary_shape, BoundaryArgs, BoundaryFlavor, PI_VOL_SUB,
};
pub use rational::{Coeff, RationalXn};
