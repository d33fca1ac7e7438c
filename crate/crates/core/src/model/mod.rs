//! Truncated scalar-QED operators, Hamiltonians and exact oracles.

mod correlator;
mod evolve;
mod ground;
mod hamiltonian;
pub mod operators;
mod overlap;
mod params;
mod qubit;
mod source_sink;
mod spectral;

pub use correlator::{exact_correlator, gamma_state, CorrelatorOracle, InitialState};
pub use evolve::{exact_evolve, Spectrum};
pub use ground::{
    exact_ground_state, lanczos_lowest, onesite_b, onesite_ground_state, reference_b, GroundState,
    OneSiteGroundState,
};
pub use hamiltonian::{build_hamiltonian, HamiltonianTerms, LocalTerm};
pub use operators::{build_lz, build_lz2, build_uplus, build_ux, lz_diagonal};
pub use overlap::{overlap_point, overlap_scan, OverlapRow};
pub use params::ModelParams;
pub use qubit::{embedding_isometry, pauli_x, pauli_y, pauli_z, qubit_encoding, QubitEncoding, EMBEDDING};
pub use source_sink::{source_sink, spin1_split, spin1_split_reversed, SourceSink};
pub use spectral::{spectral_function, CorrelatorSeries};
