//! Uniformly accurate exponential-type integrators for the cubic
//! Klein-Gordon equation
//!
//! ```text
//! c^{-2} z_tt - Delta z + c^2 z = |z|^2 z   on the torus,
//! ```
//!
//! from the relativistic regime `c = 1` to the non-relativistic limit.
//! Fields are stored as Fourier coefficients ([`spectral`]); the equation is
//! rewritten in twisted first-order variables ([`model`]) and advanced by the
//! schemes in [`integrators`]. [`harness`] runs convergence sweeps and
//! [`checks`] collects the verification suite behind `kg-uniform verify`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod checks;
pub mod error;
pub mod harness;
pub mod integrators;
pub mod kernels;
pub mod phase;
pub mod phi;
pub mod quadrature;
pub mod model;
pub mod spectral;

pub use error::{KgError, Result};
pub use spectral::{make_grid, make_multipliers, MultiplierSet, SpectralField, SpectralGrid};
