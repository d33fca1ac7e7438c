use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::gates::{decompose_diagonal_rotation, decompose_lzlz, decompose_ux, GateSequence, NativeGateSet, UxMode};
use crate::model::lz_diagonal;

use super::qubit::{build_qubit_lzlz, qubit_lz2_sequence, qubit_ux_sequence};

/// Generic angle for counting; a zero angle would drop rotations.
const COUNT_ANGLE: f64 = 0.37;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCountRow {
    pub term: String,
    pub qubit_1q: usize,
    pub qubit_2q: usize,
    pub qutrit_1q: usize,
    pub qutrit_2q: usize,
}

fn split_counts(seq: &GateSequence) -> (usize, usize) {
    let one = seq.ops.iter().filter(|op| op.sites.len() == 1).count();
    (one, seq.len() - one)
}

fn row(term: &str, qubit: &GateSequence, qutrit: &GateSequence) -> GateCountRow {
    let (qubit_1q, qubit_2q) = split_counts(qubit);
    let (qutrit_1q, qutrit_2q) = split_counts(qutrit);
    GateCountRow { term: term.into(), qubit_1q, qubit_2q, qutrit_1q, qutrit_2q }
}

/// Primitive gate counts per Hamiltonian term, taken from the built circuits.
pub fn gate_count_report(seed: u64) -> Result<Vec<GateCountRow>> {
    let theta = COUNT_ANGLE;
    let lz2: Vec<f64> = lz_diagonal(1)?.iter().map(|m| m * m).collect();
    Ok(vec![
        row("Ux", &qubit_ux_sequence(theta, seed)?, &decompose_ux(theta, 1, false, UxMode::Exact)?),
        row("Lz2", &qubit_lz2_sequence(theta, 0), &decompose_diagonal_rotation(theta, &lz2)?),
        row("LzLz", &build_qubit_lzlz(theta)?.sequence, &decompose_lzlz(theta, 1, NativeGateSet::CsumNative)?),
    ])
}
