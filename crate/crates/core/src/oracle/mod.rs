//! Independent cross-checks for the radial solver and the bounds.

mod basis;
mod gaussian;
mod identity;
mod quadrature;
mod reduced;

pub use basis::{salpeter_basis_energy, BasisConfig, BasisResult};
pub use gaussian::{gaussian_upper_expectation, minimize_gaussian_upper, GaussianTrial};
pub use identity::{kinetic_identity_residual, kinetic_identity_residual_with};
pub use quadrature::gauss_legendre;
pub use reduced::reduced_operator_energy;
