//! Energy as a functional of the correlation: the exact stationary path in
//! the density-diagonal orbitals, and the two closed-form baselines.

pub mod ansatz;
pub mod functional;
pub mod quadrature;
pub mod simplex;
pub mod stationary;

pub use ansatz::{
    ansatz_density, ansatz_density_constant, ansatz_optimize, sk_zeroth_energy, AnsatzOptions, AnsatzParams,
    AnsatzResult, PowerAnsatz, ZerothOrder,
};
pub use functional::{EnergyFunctional, ExpansionCorrelation, Jet, TrialCorrelation};
pub use quadrature::{AdaptiveOptions, Estimate, PolarRule};
pub use stationary::{dft_solve, orbital_bases, orbital_truncation, DftSolution, StationarySystem};
