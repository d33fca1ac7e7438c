//! Qutrit Pauli noise channels and their attachment to gate sequences.

mod channels;
mod policy;
mod spec;

pub use channels::{build_1q_channel, build_2q_channel, identity_weight};
pub use policy::{attach_noise, noiseless, Instruction, NoiseModel, NoisePolicy, NoisySequence};
pub use spec::{OneQuditReading, PauliChannelSpec, TwoQuditMode, TwoQuditSpec};
