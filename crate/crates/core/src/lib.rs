//! Qudit simulation of a gauge-invariant, spin-truncated lattice scalar QED model.
//!
//! The crate is organised bottom-up:
//!
//! * [`qudit`]: registers, statevectors, density matrices, channels, sampling.
//! * [`gates`]: subspace Paulis, rotations, `C_sum`, decompositions of the three
//!   Trotter building blocks, SU(3) Euler fitting.
//! * [`model`]: truncated operators, Hamiltonians, exact evolution and
//!   correlator oracles, ground states, qubit encoding.
//! * [`circuits`]: Trotter steps, state preparation, correlator and Hadamard-test
//!   circuits, gate-count reports.
//! * [`noise`]: qutrit Pauli channels and the noise-attachment policy.
//! * [`experiments`]: end-to-end reproducible runs producing CSV tables.

pub mod circuits;
pub mod error;
pub mod experiments;
pub mod gates;
pub mod linalg;
pub mod model;
pub mod noise;
pub mod qudit;
pub mod rng;
pub mod tolerance;

pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector, C64};
