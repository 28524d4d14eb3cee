//! Classical (high-temperature) Casimir interaction between two Drude spheres.
//!
//! All energies are dimensionless: a value `phi` corresponds to the free
//! energy `F = (k_B T / 2) * phi`. The crate evaluates
//!
//! * the Dirichlet scalar energy in its round-trip and bispherical multipole
//!   representations ([`scalar`]),
//! * the monopole correction that turns the Dirichlet result into the Drude
//!   result, the two-sphere capacitance matrix and the sphere-plane and
//!   equal-sphere limits ([`monopole`]),
//! * the short-distance expansion to order `mu^4` ([`asymptotics`]),
//! * brute-force oracles for the block-determinant combinatorics
//!   ([`oracle`]).

pub mod asymptotics;
pub mod error;
pub mod geometry;
pub mod monopole;
pub mod oracle;
pub mod scalar;
pub mod specfun;
pub mod summation;

pub use error::{Error, Result};
pub use geometry::{derive_parameters, geometry_from_mu, GeometryDerived, SphereGeometry};
pub use summation::{SeriesOptions, SeriesResult};

/// Library version string reported by the CLI.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
