use crate::error::{Error, Result};
use crate::gates::{subspace_pauli, Axis, PauliMode};
use crate::linalg::{self, CMatrix, C64};
use crate::qudit::Channel;

use super::spec::PauliChannelSpec;

fn embedded_paulis(d: usize) -> Result<Vec<CMatrix>> {
    let mut out = Vec::new();
    for a in 0..d {
        for b in a + 1..d {
            for axis in Axis::ALL {
                out.push(subspace_pauli(axis, a, b, d, PauliMode::Embedded)?);
            }
        }
    }
    Ok(out)
}

fn assemble(terms: Vec<(f64, CMatrix)>, dim: usize, local_dims: Vec<usize>) -> Result<Channel> {
    let total: f64 = terms.iter().map(|(p, _)| p).sum();
    if total >= 1.0 {
        return Err(Error::InvalidProbability(format!(
            "error probabilities sum to {total}, leaving no identity weight"
        )));
    }
    let mut kraus = vec![linalg::identity(dim) * C64::new((1.0 - total).sqrt(), 0.0)];
    for (p, m) in terms {
        if p > 0.0 {
            kraus.push(m * C64::new(p.sqrt(), 0.0));
        }
    }
    Channel::new(kraus, local_dims)
}

/// `ρ → (1 − Σp)ρ + Σ p σ ρ σ†` over embedded one-qudit Paulis.
pub fn build_1q_channel(spec: &PauliChannelSpec) -> Result<Channel> {
    let d = spec.d;
    let mut terms = Vec::new();
    for ((a, b), p) in spec.pair_probabilities()? {
        for axis in Axis::ALL {
            terms.push((p, subspace_pauli(axis, a, b, d, PauliMode::Embedded)?));
        }
    }
    assemble(terms, d, vec![d])
}

/// Pauli channel over all `σ ⊗ σ` products of embedded one-qudit Paulis.
pub fn build_2q_channel(spec: &PauliChannelSpec) -> Result<Channel> {
    let d = spec.d;
    let p = spec.two_qudit_term_probability()?;
    let singles = embedded_paulis(d)?;
    let mut terms = Vec::new();
    for a in &singles {
        for b in &singles {
            terms.push((p, linalg::kron(a, b)));
        }
    }
    assemble(terms, d * d, vec![d, d])
}

/// Weight of the identity Kraus operator, `1 − Σp`.
pub fn identity_weight(channel: &Channel) -> f64 {
    channel.kraus()[0][(0, 0)].norm_sqr()
}
