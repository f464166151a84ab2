//! Numerical engine for one-dimensional quantum mechanics with piecewise-flat
//! masses and potentials under the ordered kinetic operator
//! `T = (m^α p m^β p m^α) / 2` with `2α + β = -1`.
//!
//! The crate is split by problem type:
//!
//! - [`ordering`]: the ordering parameter, `σ(μ, β)`, wavenumbers and units.
//! - [`structure`]: layered geometries with semi-infinite leads.
//! - [`matching`]: interface/propagation matrices and a numerically stable
//!   scattering-matrix solver for arbitrary [`Structure`]s.
//! - [`closed_forms`]: analytic step and rectangular-barrier results.
//! - [`bound_states`]: spectra of the symmetric rectangular well.
//! - [`bands`]: dispersion and band diagrams of the periodic multibarrier.

pub mod bands;
pub mod bound_states;
pub mod closed_forms;
mod error;
pub mod matching;
pub mod ordering;
pub mod roots;
pub mod structure;

pub use error::{Error, Result};
pub use ordering::{sigma, wavenumber, OrderingScheme, PhysicalConstants};
pub use structure::{Layer, Lead, Structure};
