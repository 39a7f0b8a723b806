//! Independent numerical machinery: radial grids and sampled fields, an
//! adaptive complex Runge–Kutta integrator for the radial equation,
//! finite-difference Schrödinger residuals and quadrature with head and
//! tail closures.

mod field;
mod grid;
pub mod ode;
pub mod par;
pub mod quadrature;
pub mod stencil;

pub use field::ComplexField;
pub use grid::{GridScheme, RadialGrid};
pub use ode::{integrate_radial, integrate_schrodinger, InitialData, OdeOptions};
pub use quadrature::{inner_product, quadrature, Integrand, QuadratureResult};
pub use stencil::{schrodinger_residual, Stencil};
