//! Complex (non-Hermitian) supersymmetric partners of the radial
//! Schrödinger equation, built from Gamow transformation functions.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`]: Kummer `M(a,c,z)` and Tricomi `U(a,c,z)` for complex `a`, `z`
//!   and positive integer `c`, with derivatives.
//! * [`potentials`]: effective radial potentials and hydrogen-like bound states.
//! * [`gamow`]: complex wavenumbers, energy classification and the (generalized)
//!   Coulomb Gamow vectors used as transformation functions.
//! * [`darboux`]: superpotential, partner potential, the intertwining map and
//!   the extra complex-eigenvalue state.
//! * [`numerics`]: grids, sampled fields, an adaptive complex ODE integrator,
//!   finite-difference residuals and quadrature with tail handling.
//! * [`verify`] and [`figures`]: the verification suite and figure datasets
//!   consumed by the command-line front end.
//!
//! Units: energies in `Ze²/2r_B`, lengths in Bohr radii `r_B`; the Coulomb
//! potential is `V(r) = -2/r`.

pub mod darboux;
pub mod error;
pub mod figures;
pub mod gamow;
pub mod numerics;
pub mod potentials;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
