//! Exact spectral solver for the long-range dispersion constants of the
//! hydrogen molecule.
//!
//! The reduced correlation equations are projected onto associated-Laguerre
//! product bases and solved in exact rational arithmetic. From the solved
//! coefficients come the energy constants `A`, `B`, `C`, the normalization
//! constants, and the radial perturbation densities. A second route obtains
//! the same energies by making a quadratic energy functional stationary over
//! density orbitals, and two closed-form trial correlations give variational
//! baselines.

pub mod densities;
pub mod dft;
pub mod error;
pub mod exact;
pub mod sk;

pub use error::{Error, Result};
