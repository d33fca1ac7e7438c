use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{subspace_hadamard, GateOp, GateSequence, NativeGateSet, NoiseClass};
use crate::linalg::{self, CMatrix, C64};
use crate::model::{build_hamiltonian, onesite_ground_state, ModelParams, Spectrum};
use crate::noise::{attach_noise, noiseless, NoiseModel};
use crate::qudit::{sample_measurements, DensityMatrix, QuantumState, Register, StateVector};

use super::circuit::{AncillaReadout, Circuit, CircuitMetadata, Part};
use super::prep::{ancilla_register, solve_prep_angles, vprep_sequence, vprep_targets, PrepAngles};
use super::trotter::trotter_step_sequence;

/// Time evolution inserted between preparation and readout.
#[derive(Clone, Debug, PartialEq)]
pub enum Evolution {
    Trotter { dt: f64, steps: usize, native: NativeGateSet },
    /// `e^{−iHt}` as one dense gate on all working sites.
    Exact { t: f64 },
}

impl Evolution {
    pub fn time(&self) -> f64 {
        match *self {
            Evolution::Trotter { dt, steps, .. } => dt * steps as f64,
            Evolution::Exact { t } => t,
        }
    }

    /// Gates on working sites `0..n_s`.
    pub fn sequence(&self, params: &ModelParams) -> Result<GateSequence> {
        match *self {
            Evolution::Trotter { dt, steps, native } => {
                if native == NativeGateSet::QubitCnot {
                    return Err(Error::Unsupported(
                        "correlator circuits run on qutrit registers".into(),
                    ));
                }
                let step = trotter_step_sequence(params, dt, native)?;
                let mut seq = GateSequence::new();
                for _ in 0..steps {
                    seq.append(step.clone());
                }
                Ok(seq)
            }
            Evolution::Exact { t } => {
                let spectrum = Spectrum::new(&build_hamiltonian(params)?)?;
                let mut seq = GateSequence::new();
                seq.push(GateOp::unlabeled(
                    "exact_evolution",
                    (0..params.n_s).collect(),
                    spectrum.propagator(t),
                ));
                Ok(seq)
            }
        }
    }
}

/// Maps the ancilla `σ^y_{0,1}` eigenbasis onto `|0⟩, |1⟩`.
pub fn y_basis_change() -> CMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut m = linalg::identity(3);
    m[(0, 0)] = C64::new(h, 0.0);
    m[(0, 1)] = C64::new(0.0, h);
    m[(1, 0)] = C64::new(h, 0.0);
    m[(1, 1)] = C64::new(0.0, -h);
    m
}

/// Terminal ancilla rotation selecting `σ^x_{0,1}` or `σ^y_{0,1}`.
pub fn basis_change(part: Part, ancilla: usize) -> Result<GateOp> {
    Ok(match part {
        Part::Real => GateOp::labeled("h01", vec![ancilla], subspace_hadamard(0, 1, 3)?, None, NoiseClass::OneQuditNoisy),
        Part::Imag => GateOp::labeled("ybasis01", vec![ancilla], y_basis_change(), None, NoiseClass::OneQuditNoisy),
    })
}

/// Ancilla-controlled shift of working site `x`, then the readout rotation.
pub fn correlator_suffix(params: &ModelParams, x: usize, part: Part) -> Result<GateSequence> {
    let anc = params.n_s;
    let mut seq = GateSequence::new();
    seq.push(GateOp::csum(anc, x, params.local_dim(), false)?);
    seq.push(basis_change(part, anc)?);
    Ok(seq)
}

/// Source site `y`, sink site `x`, and the solved preparation angles.
#[derive(Clone, Debug)]
pub struct CorrelatorSetup {
    pub params: ModelParams,
    pub register: Register,
    pub angles: PrepAngles,
    /// Norm of `U⁺Ψ₀`.
    pub raised_norm: f64,
    pub x: usize,
    pub y: usize,
}

impl CorrelatorSetup {
    pub fn new(params: &ModelParams, x: usize, y: usize) -> Result<Self> {
        for s in [x, y] {
            if s >= params.n_s {
                return Err(Error::SiteOutOfRange { site: s, num_sites: params.n_s });
            }
        }
        let angles = solve_prep_angles(params)?;
        let (_, _, raised_norm) = vprep_targets(&onesite_ground_state(params)?)?;
        Ok(CorrelatorSetup {
            params: params.clone(),
            register: ancilla_register(params)?,
            angles,
            raised_norm,
            x,
            y,
        })
    }

    pub fn prefix(&self) -> Result<GateSequence> {
        vprep_sequence(&self.params, &self.angles, self.y)
    }

    pub fn suffix(&self, part: Part) -> Result<GateSequence> {
        correlator_suffix(&self.params, self.x, part)
    }

    pub fn readout(&self, part: Part) -> AncillaReadout {
        AncillaReadout {
            ancilla: self.params.n_s,
            part,
            sign_site: Some(self.x),
            sign_level: 0,
            scale: self.raised_norm,
        }
    }

    pub fn circuit(&self, evolution: &Evolution, part: Part) -> Result<Circuit> {
        let mut seq = self.prefix()?;
        seq.append(evolution.sequence(&self.params)?);
        seq.append(self.suffix(part)?);
        let (native, dt, steps) = match *evolution {
            Evolution::Trotter { dt, steps, native } => (Some(native), Some(dt), Some(steps)),
            Evolution::Exact { .. } => (None, None, None),
        };
        Circuit::new(
            self.register.clone(),
            seq,
            CircuitMetadata {
                label: format!("correlator_{}", if part == Part::Real { "real" } else { "imag" }),
                native,
                dt,
                steps,
            },
        )?
        .with_readout(self.readout(part))
    }
}

/// Correlator circuit with source and sink on the first working site.
pub fn build_correlator_circuit(
    params: &ModelParams,
    dt: f64,
    steps: usize,
    native: NativeGateSet,
    part: Part,
) -> Result<Circuit> {
    CorrelatorSetup::new(params, 0, 0)?.circuit(&Evolution::Trotter { dt, steps, native }, part)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Exact,
    CircuitNoiseless,
    CircuitNoisy,
}

impl Provenance {
    pub fn label(self) -> &'static str {
        match self {
            Provenance::Exact => "exact",
            Provenance::CircuitNoiseless => "circuit_noiseless",
            Provenance::CircuitNoisy => "circuit_noisy",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelatorEstimate {
    pub t: f64,
    pub re: f64,
    pub im: f64,
    pub err_re: f64,
    pub err_im: f64,
    pub shots: Option<u64>,
    pub provenance: Provenance,
}

impl CorrelatorEstimate {
    pub fn value(&self) -> C64 {
        C64::new(self.re, self.im)
    }
}

/// Mean and standard error of one readout.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PartEstimate {
    pub mean: f64,
    pub err: f64,
}

/// Exact readout value from outcome probabilities.
pub fn readout_exact(probabilities: &[f64], register: &Register, readout: &AncillaReadout) -> f64 {
    let sum: f64 = probabilities
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > 0.0)
        .map(|(i, &p)| p * readout.shot_value(&register.digits(i)))
        .sum();
    readout.scale * sum
}

/// Shot-sampled readout value with its standard error.
pub fn readout_sampled<S: QuantumState>(
    state: &S,
    readout: &AncillaReadout,
    shots: u64,
    seed: u64,
) -> Result<PartEstimate> {
    let records = sample_measurements(state, shots, seed)?;
    let n = shots as f64;
    let values: Vec<(f64, f64)> = records
        .iter()
        .map(|r| (readout.shot_value(&r.outcome), r.count as f64))
        .collect();
    let mean = values.iter().map(|(v, c)| v * c).sum::<f64>() / n;
    let var = if shots > 1 {
        values.iter().map(|(v, c)| c * (v - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    Ok(PartEstimate {
        mean: readout.scale * mean,
        err: readout.scale * (var / n).sqrt(),
    })
}

/// How circuits are executed and read out.
#[derive(Clone, Debug)]
pub enum Backend {
    /// Noiseless statevector, exact expectation values.
    Exact,
    /// Noiseless statevector, shot sampling.
    Sampled { shots: u64 },
    /// Density matrix with noise; exact expectations when `shots` is `None`.
    Noisy { model: NoiseModel, shots: Option<u64> },
}

/// Estimate the readout of a circuit that carries one.
pub fn estimate_part(circuit: &Circuit, backend: &Backend, seed: u64) -> Result<PartEstimate> {
    let readout = circuit
        .readout
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("circuit has no readout".into()))?;
    let register = &circuit.register;
    let zero = vec![0; register.num_sites()];
    match backend {
        Backend::Exact | Backend::Sampled { .. } => {
            let state = circuit.run(&StateVector::basis(register.clone(), &zero)?)?;
            match backend {
                Backend::Sampled { shots } => readout_sampled(&state, readout, *shots, seed),
                _ => Ok(PartEstimate {
                    mean: readout_exact(&state.probabilities(), register, readout),
                    err: 0.0,
                }),
            }
        }
        Backend::Noisy { model, shots } => {
            let mut rho = DensityMatrix::basis(register.clone(), &zero)?;
            attach_noise(&circuit.sequence, model)?.run_density(&mut rho)?;
            match shots {
                Some(s) => readout_sampled(&rho, readout, *s, seed),
                None => Ok(PartEstimate {
                    mean: readout_exact(&rho.probabilities(), register, readout),
                    err: 0.0,
                }),
            }
        }
    }
}

/// Both parts of the correlator from two circuit runs.
pub fn estimate_correlator(
    setup: &CorrelatorSetup,
    evolution: &Evolution,
    backend: &Backend,
    seed: u64,
) -> Result<CorrelatorEstimate> {
    let re = estimate_part(&setup.circuit(evolution, Part::Real)?, backend, crate::rng::derive_seed(seed, "real", 0))?;
    let im = estimate_part(&setup.circuit(evolution, Part::Imag)?, backend, crate::rng::derive_seed(seed, "imag", 0))?;
    let (shots, provenance) = match backend {
        Backend::Exact => (None, Provenance::CircuitNoiseless),
        Backend::Sampled { shots } => (Some(*shots), Provenance::CircuitNoiseless),
        Backend::Noisy { shots, .. } => (*shots, Provenance::CircuitNoisy),
    };
    Ok(CorrelatorEstimate {
        t: evolution.time(),
        re: re.mean,
        im: im.mean,
        err_re: re.err,
        err_im: im.err,
        shots,
        provenance,
    })
}

/// Noiseless execution of a plain sequence on a density matrix.
pub fn run_density_noiseless(seq: &GateSequence, rho: &mut DensityMatrix) -> Result<()> {
    noiseless(seq).run_density(rho)
}
