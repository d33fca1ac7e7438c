//! Hadamard-test estimate of the correlator: one circuit per split part of
//! the sink operator, with the ancilla controlling both preparations.

use crate::error::{Error, Result};
use crate::gates::{controlled, subspace_hadamard, GateOp, GateSequence, NoiseClass};
use crate::linalg::{self, C64};
use crate::model::{onesite_ground_state, source_sink, ModelParams};

use super::circuit::{AncillaReadout, Circuit, CircuitMetadata, Part};
use super::correlator::{basis_change, estimate_part, Backend, Evolution};
use super::prep::{ancilla_register, vg_sequence, vprep_targets};

/// Which split part `A_k` of `U⁺` the sink applies as `A_k†`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitPart {
    First,
    Second,
}

impl SplitPart {
    fn index(self) -> usize {
        match self {
            SplitPart::First => 0,
            SplitPart::Second => 1,
        }
    }
}

/// Circuit whose ancilla readout is `⟨Γ(t)|A_k†_x|Γ⁺_y(t)⟩`, with `Γ⁺_y` the
/// normalised `U⁺_yΓ`.
pub fn build_hadamard_test(
    params: &ModelParams,
    evolution: &Evolution,
    x: usize,
    y: usize,
    split: SplitPart,
    part: Part,
) -> Result<Circuit> {
    let n_s = params.n_s;
    for s in [x, y] {
        if s >= n_s {
            return Err(Error::SiteOutOfRange { site: s, num_sites: n_s });
        }
    }
    let register = ancilla_register(params)?;
    let anc = n_s;
    let gs = onesite_ground_state(params)?;
    let vg = vg_sequence(&gs, 0)?.matrix(&[3])?;
    let (_, raised, _) = vprep_targets(&gs)?;
    let w = linalg::unitary_with_first_column(raised.as_slice())?;
    let sink = source_sink(1)?.split_minus()[split.index()].clone();

    let mut seq = GateSequence::new();
    seq.push(GateOp::labeled("h01", vec![anc], subspace_hadamard(0, 1, 3)?, None, NoiseClass::OneQuditNoisy));
    for s in 0..n_s {
        let branch = if s == y { &w } else { &vg };
        let m = controlled(&vg, 3, 0)? * controlled(branch, 3, 1)?;
        seq.push(GateOp::labeled("cprep", vec![anc, s], m, None, NoiseClass::TwoQudit));
    }
    seq.append(evolution.sequence(params)?);
    seq.push(GateOp::labeled("csink", vec![anc, x], controlled(&sink, 3, 1)?, None, NoiseClass::TwoQudit));
    seq.push(basis_change(part, anc)?);
    Circuit::new(
        register,
        seq,
        CircuitMetadata {
            label: "hadamard_test".into(),
            ..Default::default()
        },
    )?
    .with_readout(AncillaReadout {
        ancilla: anc,
        part,
        sign_site: None,
        sign_level: 0,
        scale: 1.0,
    })
}

/// Correlator from the four Hadamard-test circuits.
pub fn hadamard_correlator(
    params: &ModelParams,
    evolution: &Evolution,
    x: usize,
    y: usize,
    backend: &Backend,
    seed: u64,
) -> Result<C64> {
    let (_, _, norm) = vprep_targets(&onesite_ground_state(params)?)?;
    let mut total = C64::new(0.0, 0.0);
    for (k, split) in [SplitPart::First, SplitPart::Second].into_iter().enumerate() {
        for (j, part) in [Part::Real, Part::Imag].into_iter().enumerate() {
            let c = build_hadamard_test(params, evolution, x, y, split, part)?;
            let est = estimate_part(&c, backend, crate::rng::derive_seed(seed, "hadamard", (2 * k + j) as u64))?;
            total += match part {
                Part::Real => C64::new(est.mean, 0.0),
                Part::Imag => C64::new(0.0, est.mean),
            };
        }
    }
    Ok(total * (norm / 2.0))
}
