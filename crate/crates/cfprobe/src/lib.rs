//! Quadrature characteristic functions of a single damped bosonic mode.
//!
//! The crate computes, evolves, samples and witnesses the characteristic
//! function G(k, φ) = ⟨e^{ik x̂_φ}⟩ of the phase quadrature
//! x̂_φ = â e^{iφ} + â† e^{−iφ} (vacuum variance 1), for Fock, squeezed-vacuum,
//! thermal and ground states coupled to a thermal bath. Closed-form analytics
//! live in [`evolution`]; an independent master-equation integrator in
//! [`oracle`] provides the numerical ground truth they are validated against.
//! [`homodyne`] generates synthetic balanced-homodyne data and estimates G
//! from samples, [`ionprobe`] simulates the trapped-ion sideband readout that
//! maps G onto electronic populations, and [`cli`] drives everything from the
//! command line.

pub mod cli;
pub mod error;
pub mod evolution;
pub mod homodyne;
pub mod ionprobe;
pub mod oracle;
pub mod specfun;
pub mod states;

pub use error::{Error, Result};
pub use evolution::BathParams;
pub use oracle::DensityMatrix;
pub use states::StateSpec;
