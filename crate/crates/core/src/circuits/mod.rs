//! Circuit assembly: state preparation, Trotter steps, correlator readout
//! and the qubit-encoded comparison circuits.

mod circuit;
pub mod correlator;
mod counts;
pub mod hadamard;
mod prep;
pub mod qubit;
mod trotter;

pub use circuit::{AncillaReadout, Circuit, CircuitDescription, CircuitMetadata, Part};
pub use correlator::{
    build_correlator_circuit, estimate_correlator, estimate_part, Backend, CorrelatorEstimate, CorrelatorSetup,
    Evolution, PartEstimate, Provenance,
};
pub use counts::{gate_count_report, GateCountRow};
pub use hadamard::{build_hadamard_test, hadamard_correlator, SplitPart};
pub use prep::{
    ancilla_register, build_vg, build_vprep, solve_prep_angles, vg_sequence, vprep_fidelity, vprep_sequence,
    PrepAngles, REFERENCE_OMEGA,
};
pub use qubit::{build_qubit_lzlz, calibrate_qubit_rz, qubit_ux_sequence, RzCalibration};
pub use trotter::{bond_layout, build_trotter_step, trotter_error, trotter_product_oracle, trotter_step_sequence};
