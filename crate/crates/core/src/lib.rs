//! Numerical toolkit for the Gel'fand-Cetlin-Molev integrable system on coadjoint orbits of
//! the compact symplectic group `U(n,H)`.
//!
//! - [`quat`]: quaternions, quaternionic matrices, the complex embedding and symplectic form.
//! - [`spectral`]: diagonalization of skew-H-hermitian matrices and orbit sampling.
//! - [`gcm`]: the `n^2` integrable functions (Thimm, G- and F-families).
//! - [`poisson`]: the Lie-Poisson bracket engine and commutativity/independence certification.
//! - [`patterns`]: Gel'fand-Cetlin and symplectic pattern counting with Weyl dimension oracles.
//! - [`gauge`]: truncated matrix power series and the classical-limit maps.

pub mod error;
pub mod gauge;
pub mod gcm;
pub mod patterns;
pub mod poisson;
pub mod quat;
pub mod spectral;

pub use error::{Error, Result};
pub use quat::{ComplexMatrix, QMatrix, Quaternion};
