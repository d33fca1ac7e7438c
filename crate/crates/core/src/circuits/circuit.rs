use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{GateDescription, GateSequence, NativeGateSet};
use crate::linalg::CMatrix;
use crate::qudit::{QuantumState, Register, StateVector};

/// Real or imaginary part of a Hadamard-test style readout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Real,
    Imag,
}

/// Classical post-processing of a terminal computational-basis measurement.
///
/// The ancilla outcome maps to `+1` (level 0), `−1` (level 1) or `0` (level 2).
/// With `sign_site` set, a shot contributes `a·(1 + z)/2`, where `z = −1` when
/// that working site is found in `sign_level` and `+1` otherwise. The estimate
/// is `scale` times the shot mean, negated for the imaginary part because the
/// ancilla `σ^y_{0,1}` eigenbasis is rotated to `|0⟩, |1⟩`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AncillaReadout {
    pub ancilla: usize,
    pub part: Part,
    pub sign_site: Option<usize>,
    pub sign_level: usize,
    pub scale: f64,
}

impl AncillaReadout {
    /// Per-shot value for the flat basis `digits`.
    pub fn shot_value(&self, digits: &[usize]) -> f64 {
        let a = match digits[self.ancilla] {
            0 => 1.0,
            1 => -1.0,
            _ => 0.0,
        };
        let v = match self.sign_site {
            Some(s) => {
                let z = if digits[s] == self.sign_level { -1.0 } else { 1.0 };
                a * (1.0 + z) / 2.0
            }
            None => a,
        };
        match self.part {
            Part::Real => v,
            Part::Imag => -v,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CircuitMetadata {
    pub label: String,
    pub native: Option<NativeGateSet>,
    pub dt: Option<f64>,
    pub steps: Option<usize>,
}

/// A gate sequence bound to a register, with optional terminal readout.
#[derive(Clone, Debug)]
pub struct Circuit {
    pub register: Register,
    pub sequence: GateSequence,
    pub readout: Option<AncillaReadout>,
    pub metadata: CircuitMetadata,
}

/// JSON form of a circuit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircuitDescription {
    pub dims: Vec<usize>,
    pub gates: Vec<GateDescription>,
    pub readout: Option<AncillaReadout>,
    pub metadata: CircuitMetadata,
}

impl Circuit {
    pub fn new(register: Register, sequence: GateSequence, metadata: CircuitMetadata) -> Result<Self> {
        for op in &sequence.ops {
            let local = register.subsystem_dim(&op.sites)?;
            if op.matrix.nrows() != local {
                return Err(Error::DimensionMismatch {
                    expected: local,
                    found: op.matrix.nrows(),
                });
            }
        }
        Ok(Circuit {
            register,
            sequence,
            readout: None,
            metadata,
        })
    }

    pub fn with_readout(mut self, readout: AncillaReadout) -> Result<Self> {
        let n = self.register.num_sites();
        for s in std::iter::once(readout.ancilla).chain(readout.sign_site) {
            if s >= n {
                return Err(Error::SiteOutOfRange { site: s, num_sites: n });
            }
        }
        self.readout = Some(readout);
        Ok(self)
    }

    /// Dense unitary (global phase included).
    pub fn unitary(&self) -> Result<CMatrix> {
        self.sequence.matrix(self.register.dims())
    }

    /// Run on a statevector.
    pub fn run(&self, state: &StateVector) -> Result<StateVector> {
        if state.register() != &self.register {
            return Err(Error::RegisterMismatch);
        }
        let mut out = state.clone();
        for op in &self.sequence.ops {
            out.apply_unitary(&op.matrix, &op.sites)?;
        }
        Ok(out)
    }

    /// Run from `|0…0⟩`.
    pub fn run_from_zero(&self) -> Result<StateVector> {
        let zero = vec![0; self.register.num_sites()];
        self.run(&StateVector::basis(self.register.clone(), &zero)?)
    }

    pub fn description(&self) -> CircuitDescription {
        CircuitDescription {
            dims: self.register.dims().to_vec(),
            gates: self.sequence.descriptions(),
            readout: self.readout.clone(),
            metadata: self.metadata.clone(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.description())?)
    }
}
