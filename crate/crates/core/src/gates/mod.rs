//! Qudit gate constructors and decompositions of the Trotter building blocks.

mod diagonal;
mod euler;
pub(crate) mod fit;
mod lzlz;
mod pauli;
mod sequence;
mod standard;
mod ux;

pub use diagonal::{decompose_diagonal_rotation, solve_diagonal_coeffs, DiagonalDecomposition};
pub use euler::{euler_product, haar_random_su3, su3_euler_fit, EulerFit};
pub use lzlz::{decompose_lzlz, lzlz_target, reference_lzlz_spin1};
pub use pauli::{rotation, subspace_pauli, Axis, PauliMode};
pub use sequence::{GateDescription, GateOp, GateSequence, NoiseClass};
pub use standard::{controlled, csum, generalized_hadamard, subspace_hadamard};
pub use ux::{corrected_ux_spin1, decompose_ux, reference_ux_spin1, UxMode};

use serde::{Deserialize, Serialize};

/// Which two-qudit interaction the hardware provides natively.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NativeGateSet {
    /// `C_sum` plus single-qudit rotations.
    #[serde(rename = "csum")]
    CsumNative,
    /// `e^{iθ L^z⊗L^z}` plus single-qudit rotations.
    #[serde(rename = "lzlz")]
    LzlzNative,
    /// Two-qubit encoding with CNOT plus single-qubit rotations.
    #[serde(rename = "qubit")]
    QubitCnot,
}

impl NativeGateSet {
    pub fn label(self) -> &'static str {
        match self {
            NativeGateSet::CsumNative => "csum",
            NativeGateSet::LzlzNative => "lzlz",
            NativeGateSet::QubitCnot => "qubit",
        }
    }
}

impl std::str::FromStr for NativeGateSet {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "csum" => Ok(Self::CsumNative),
            "lzlz" => Ok(Self::LzlzNative),
            "qubit" => Ok(Self::QubitCnot),
            other => Err(crate::Error::InvalidArgument(format!(
                "unknown native gate set '{other}'"
            ))),
        }
    }
}
