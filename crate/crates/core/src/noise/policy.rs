use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{GateOp, GateSequence, NoiseClass};
use crate::linalg;
use crate::qudit::{Channel, DensityMatrix, QuantumState, StateVector};

use super::channels::{build_1q_channel, build_2q_channel};
use super::spec::PauliChannelSpec;

/// Which gate classes are followed by a noise channel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoisePolicy {
    pub noisy: Vec<NoiseClass>,
}

impl Default for NoisePolicy {
    fn default() -> Self {
        NoisePolicy {
            noisy: vec![NoiseClass::OneQuditNoisy, NoiseClass::TwoQudit],
        }
    }
}

impl NoisePolicy {
    pub fn is_noisy(&self, class: NoiseClass) -> bool {
        self.noisy.contains(&class)
    }
}

/// Channels built from a spec, paired with a policy.
#[derive(Clone, Debug)]
pub struct NoiseModel {
    pub spec: PauliChannelSpec,
    pub policy: NoisePolicy,
    one: Arc<Channel>,
    two: Arc<Channel>,
}

impl NoiseModel {
    pub fn new(spec: PauliChannelSpec, policy: NoisePolicy) -> Result<Self> {
        Ok(NoiseModel {
            one: Arc::new(build_1q_channel(&spec)?),
            two: Arc::new(build_2q_channel(&spec)?),
            spec,
            policy,
        })
    }

    pub fn one_qudit(&self) -> &Channel {
        &self.one
    }

    pub fn two_qudit(&self) -> &Channel {
        &self.two
    }

    fn channel_for(&self, index: usize, op: &GateOp) -> Result<Option<Arc<Channel>>> {
        let class = op.noise.ok_or_else(|| Error::UnlabeledGate {
            index,
            name: op.name.clone(),
        })?;
        if !self.policy.is_noisy(class) {
            return Ok(None);
        }
        let channel = match op.sites.len() {
            1 => &self.one,
            2 => &self.two,
            n => {
                return Err(Error::Unsupported(format!(
                    "no noise channel for the {n}-site gate '{}'",
                    op.name
                )))
            }
        };
        if op.matrix.nrows() != channel.local_dim() {
            return Err(Error::DimensionMismatch {
                expected: channel.local_dim(),
                found: op.matrix.nrows(),
            });
        }
        Ok(Some(channel.clone()))
    }
}

/// A gate or a channel, in execution order.
#[derive(Clone, Debug)]
pub enum Instruction {
    Gate(GateOp),
    Noise { channel: Arc<Channel>, sites: Vec<usize> },
}

#[derive(Clone, Debug, Default)]
pub struct NoisySequence {
    pub instructions: Vec<Instruction>,
}

impl NoisySequence {
    pub fn channel_count(&self) -> usize {
        self.instructions
            .iter()
            .filter(|i| matches!(i, Instruction::Noise { .. }))
            .count()
    }

    pub fn gate_count(&self) -> usize {
        self.instructions.len() - self.channel_count()
    }

    /// Evolve a density matrix through every gate and channel.
    pub fn run_density(&self, rho: &mut DensityMatrix) -> Result<()> {
        for inst in &self.instructions {
            match inst {
                Instruction::Gate(op) => rho.apply_unitary(&op.matrix, &op.sites)?,
                Instruction::Noise { channel, sites } => rho.apply_channel(channel, sites)?,
            }
        }
        Ok(())
    }

    /// One quantum trajectory: each channel applies a Kraus operator drawn with
    /// probability `‖Kψ‖²`.
    pub fn run_trajectory<R: Rng + ?Sized>(&self, psi: &mut StateVector, rng: &mut R) -> Result<()> {
        for inst in &self.instructions {
            match inst {
                Instruction::Gate(op) => psi.apply_unitary(&op.matrix, &op.sites)?,
                Instruction::Noise { channel, sites } => {
                    let u: f64 = rng.random();
                    let mut acc = 0.0;
                    let mut chosen = None;
                    let kraus = channel.kraus();
                    for (k, op) in kraus.iter().enumerate() {
                        let out = psi.apply_operator(op, sites)?;
                        let w = linalg::vector_norm(&out).powi(2);
                        acc += w;
                        if u < acc || k + 1 == kraus.len() {
                            chosen = Some(out);
                            break;
                        }
                    }
                    let amps = chosen.expect("channel has at least one Kraus operator");
                    *psi = StateVector::from_unnormalized(psi.register().clone(), amps)?;
                }
            }
        }
        Ok(())
    }
}

/// Insert the policy's channel after every noisy gate of `seq`.
pub fn attach_noise(seq: &GateSequence, model: &NoiseModel) -> Result<NoisySequence> {
    let mut instructions = Vec::with_capacity(2 * seq.len());
    for (index, op) in seq.ops.iter().enumerate() {
        let channel = model.channel_for(index, op)?;
        instructions.push(Instruction::Gate(op.clone()));
        if let Some(channel) = channel {
            instructions.push(Instruction::Noise {
                channel,
                sites: op.sites.clone(),
            });
        }
    }
    Ok(NoisySequence { instructions })
}

/// Noiseless execution wrapper for a plain sequence.
pub fn noiseless(seq: &GateSequence) -> NoisySequence {
    NoisySequence {
        instructions: seq.ops.iter().cloned().map(Instruction::Gate).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::Axis;
    use crate::qudit::Register;

    fn model() -> NoiseModel {
        NoiseModel::new(PauliChannelSpec::default(), NoisePolicy::default()).unwrap()
    }

    #[test]
    fn rz_only_circuit_is_unchanged() {
        let mut seq = GateSequence::new();
        seq.push(GateOp::rotation(Axis::Z, 0, 1, 0.3, 0, 3).unwrap());
        seq.push(GateOp::rotation(Axis::Z, 1, 2, 0.3, 1, 3).unwrap());
        let noisy = attach_noise(&seq, &model()).unwrap();
        assert_eq!(noisy.channel_count(), 0);
    }

    #[test]
    fn csum_gets_one_two_qudit_channel() {
        let mut seq = GateSequence::new();
        seq.push(GateOp::csum(0, 1, 3, false).unwrap());
        let noisy = attach_noise(&seq, &model()).unwrap();
        assert_eq!(noisy.channel_count(), 1);
        match &noisy.instructions[1] {
            Instruction::Noise { channel, sites } => {
                assert_eq!(channel.arity(), 2);
                assert_eq!(sites, &vec![0, 1]);
            }
            _ => panic!("expected a channel after the gate"),
        }
    }

    #[test]
    fn unlabeled_gate_rejected() {
        let mut seq = GateSequence::new();
        seq.push(GateOp::unlabeled("mystery", vec![0], linalg::identity(3)));
        assert!(matches!(
            attach_noise(&seq, &model()),
            Err(Error::UnlabeledGate { index: 0, .. })
        ));
    }

    #[test]
    fn zero_noise_matches_noiseless() {
        let mut seq = GateSequence::new();
        seq.push(GateOp::rotation(Axis::Y, 0, 1, 0.7, 0, 3).unwrap());
        seq.push(GateOp::csum(0, 1, 3, false).unwrap());
        seq.push(GateOp::rotation(Axis::X, 1, 2, 0.2, 1, 3).unwrap());
        let reg = Register::uniform(2, 3).unwrap();
        let zero = NoiseModel::new(PauliChannelSpec::zero(), NoisePolicy::default()).unwrap();
        let mut a = DensityMatrix::basis(reg.clone(), &[0, 0]).unwrap();
        let mut b = a.clone();
        attach_noise(&seq, &zero).unwrap().run_density(&mut a).unwrap();
        noiseless(&seq).run_density(&mut b).unwrap();
        assert!(linalg::max_abs_diff(a.matrix(), b.matrix()) < 1e-12);
    }
}
