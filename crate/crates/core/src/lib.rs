//! Numerical core for multiphoton blockade in a driven single-mode cavity
//! coupled to two dipole-dipole interacting Λ-type atoms.
//!
//! The crate is `no_std` (it needs `alloc`) and contains everything that is
//! pure computation:
//!
//! * [`hilbert`]: the composite atom ⊗ atom ⊗ Fock space and its collective
//!   Dicke-type basis states,
//! * [`operators`]: dense complex matrices, elementary quantum operators, an
//!   LU factorization and a Hermitian eigensolver,
//! * [`model`]: the rotating-frame Hamiltonian and the collapse operators,
//! * [`solver`]: the Liouvillian, its steady state and an RK4 integrator,
//! * [`observables`]: ⟨a†a⟩, g²(0) and g³(0),
//! * [`dressed`]: the one- and two-photon collective-basis Hamiltonians and
//!   their closed-form spectra.
//!
//! All frequencies and rates are in units of the cavity decay rate κ, and
//! ħ = 1.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod dressed;
mod error;
pub mod hilbert;
pub mod model;
pub mod observables;
pub mod operators;
pub mod solver;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Shorthand used throughout the crate.
pub type C64 = Complex64;
