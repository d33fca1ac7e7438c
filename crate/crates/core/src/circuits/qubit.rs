use std::f64::consts::PI;
use std::sync::OnceLock;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::fit::levenberg_marquardt;
use crate::gates::{GateOp, GateSequence, NativeGateSet, NoiseClass};
use crate::linalg::{self, CMatrix, C64};
use crate::model::{build_lz, embedding_isometry, qubit_encoding};
use crate::qudit::Register;
use crate::{rng, tolerance};

use super::circuit::{Circuit, CircuitMetadata};

/// `R_z(φ) = diag(e^{−iφ/2}, e^{iφ/2})`.
pub fn qubit_rz(phi: f64) -> CMatrix {
    linalg::diag(&[C64::from_polar(1.0, -phi / 2.0), C64::from_polar(1.0, phi / 2.0)])
}

/// `R_y(φ) = e^{−iφY/2}`.
pub fn qubit_ry(phi: f64) -> CMatrix {
    let (s, c) = (phi / 2.0).sin_cos();
    CMatrix::from_row_slice(2, 2, &[linalg::c(c, 0.0), linalg::c(-s, 0.0), linalg::c(s, 0.0), linalg::c(c, 0.0)])
}

/// CNOT with the first site as control.
pub fn cnot() -> CMatrix {
    let mut m = CMatrix::zeros(4, 4);
    for (from, to) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
        m[(to, from)] = linalg::ONE;
    }
    m
}

pub fn rz_op(phi: f64, qubit: usize) -> GateOp {
    GateOp::labeled("rz", vec![qubit], qubit_rz(phi), Some(phi), NoiseClass::RzVirtual)
}

pub fn ry_op(phi: f64, qubit: usize) -> GateOp {
    GateOp::labeled("ry", vec![qubit], qubit_ry(phi), Some(phi), NoiseClass::OneQuditNoisy)
}

pub fn cx_op(control: usize, target: usize) -> GateOp {
    GateOp::labeled("cx", vec![control, target], cnot(), None, NoiseClass::TwoQudit)
}

/// The eight-CNOT parity circuit on qubits `(0, 1)` (site A) and `(2, 3)`
/// (site B), with every `R_z` angle equal to `phi`.
pub fn qubit_lzlz_sequence(phi: f64) -> GateSequence {
    let mut seq = GateSequence::new();
    seq.push(cx_op(1, 3));
    seq.push(rz_op(phi, 3));
    seq.push(cx_op(3, 2));
    seq.push(rz_op(phi, 2));
    seq.push(cx_op(2, 0));
    seq.push(rz_op(phi, 0));
    seq.push(cx_op(2, 0));
    seq.push(cx_op(3, 2));
    seq.push(cx_op(3, 0));
    seq.push(rz_op(phi, 0));
    seq.push(cx_op(3, 0));
    seq.push(cx_op(1, 3));
    seq
}

/// Residual of a 4-qubit circuit against `target` on the embedded `3⊗3` space,
/// including leakage out of it.
pub fn embedded_residual(u: &CMatrix, target: &CMatrix) -> f64 {
    let iso = embedding_isometry();
    let v = linalg::kron(&iso, &iso);
    let restricted = v.adjoint() * u * &v;
    let leak = linalg::max_abs(&(u * &v - &v * &restricted));
    linalg::phase_aligned_residual(target, &restricted).0.max(leak)
}

fn lzlz_target(theta: f64) -> CMatrix {
    let lz = build_lz(1).expect("spin-1");
    linalg::expm_i_hermitian(&linalg::kron(&lz, &lz), theta)
}

/// Angle convention of the `R_z` gates in the parity circuit: `φ = c·θ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RzCalibration {
    pub c: f64,
    /// `(c, residual)` for every candidate tried.
    pub tried: Vec<(f64, f64)>,
}

pub const RZ_CANDIDATES: [f64; 6] = [1.0, -1.0, 0.5, -0.5, 2.0, -2.0];

/// Pick the first candidate `c` whose circuit realises `e^{iθL^z⊗L^z}`.
pub fn calibrate_qubit_rz() -> Result<RzCalibration> {
    static CAL: OnceLock<std::result::Result<RzCalibration, String>> = OnceLock::new();
    CAL.get_or_init(|| {
        let probe = [0.5, -1.3];
        let mut tried = Vec::new();
        let mut chosen = None;
        for c in RZ_CANDIDATES {
            let res = probe
                .iter()
                .map(|&t| {
                    let u = qubit_lzlz_sequence(c * t).matrix(&[2; 4]).expect("qubit register");
                    embedded_residual(&u, &lzlz_target(t))
                })
                .fold(0.0, f64::max);
            tried.push((c, res));
            if chosen.is_none() && res < tolerance::DECOMPOSITION {
                chosen = Some(c);
            }
        }
        match chosen {
            Some(c) => Ok(RzCalibration { c, tried }),
            None => Err(format!("no R_z convention verified; residuals {tried:?}")),
        }
    })
    .clone()
    .map_err(Error::Numerical)
}

/// The qubit-encoded `e^{iθL^z⊗L^z}` on four qubits.
pub fn build_qubit_lzlz(theta: f64) -> Result<Circuit> {
    let cal = calibrate_qubit_rz()?;
    let seq = qubit_lzlz_sequence(cal.c * theta);
    let res = embedded_residual(&seq.matrix(&[2; 4])?, &lzlz_target(theta));
    if res > tolerance::DECOMPOSITION {
        return Err(Error::Verification {
            name: format!("qubit lzlz (c = {})", cal.c),
            residual: res,
        });
    }
    Circuit::new(
        Register::uniform(4, 2)?,
        seq,
        CircuitMetadata {
            label: "qubit_lzlz".into(),
            native: Some(NativeGateSet::QubitCnot),
            ..Default::default()
        },
    )
}

/// `e^{iθ(1+Z)/2}` on one qubit: one `R_z` and a phase.
pub fn qubit_lz2_sequence(theta: f64, qubit: usize) -> GateSequence {
    let mut seq = GateSequence::new();
    seq.push(rz_op(-theta, qubit));
    seq.global_phase = C64::from_polar(1.0, theta / 2.0);
    seq
}

const UX_TEMPLATE_PARAMS: usize = 15;

/// Three-CNOT two-qubit template; qubit 0 is the first (most significant).
fn ux_template(p: &[f64]) -> GateSequence {
    let mut seq = GateSequence::new();
    let euler = |seq: &mut GateSequence, q: usize, a: &[f64]| {
        seq.push(rz_op(a[0], q));
        seq.push(ry_op(a[1], q));
        seq.push(rz_op(a[2], q));
    };
    euler(&mut seq, 0, &p[0..3]);
    euler(&mut seq, 1, &p[3..6]);
    seq.push(cx_op(1, 0));
    seq.push(rz_op(p[6], 0));
    seq.push(ry_op(p[7], 1));
    seq.push(cx_op(0, 1));
    seq.push(ry_op(p[8], 1));
    seq.push(cx_op(1, 0));
    euler(&mut seq, 0, &p[9..12]);
    euler(&mut seq, 1, &p[12..15]);
    seq
}

fn template_matrix(p: &[f64]) -> CMatrix {
    ux_template(p).matrix(&[2, 2]).expect("two-qubit register")
}

/// Fit the 15-rotation, 3-CNOT template to `e^{iθU^x}` in the qubit encoding.
pub fn qubit_ux_sequence(theta: f64, seed: u64) -> Result<GateSequence> {
    let target = linalg::expm_i_hermitian(&qubit_encoding(1)?.ux, theta);
    let mut best = f64::INFINITY;
    for restart in 0..32u64 {
        let mut r = rng::stream(seed, "qubit-ux", restart);
        let start: Vec<f64> = (0..=UX_TEMPLATE_PARAMS).map(|_| r.random_range(-PI..PI)).collect();
        let f = |p: &[f64]| {
            let phase = C64::from_polar(1.0, p[UX_TEMPLATE_PARAMS]);
            template_matrix(&p[..UX_TEMPLATE_PARAMS])
                .iter()
                .zip(target.iter())
                .flat_map(|(a, t)| {
                    let d = a - phase * t;
                    [d.re, d.im]
                })
                .collect()
        };
        let out = levenberg_marquardt(f, start, 500, 1e-13);
        if out.residual_max > 1e-6 {
            best = best.min(out.residual_max);
            continue;
        }
        let seq = ux_template(&out.x[..UX_TEMPLATE_PARAMS]);
        let res = linalg::phase_aligned_residual(&target, &seq.matrix(&[2, 2])?).0;
        best = best.min(res);
        if res < tolerance::DECOMPOSITION {
            let (_, phase) = linalg::phase_aligned_residual(&target, &seq.matrix(&[2, 2])?);
            let mut seq = seq;
            seq.global_phase = phase;
            return Ok(seq);
        }
    }
    Err(Error::FitFailed {
        residual: best,
        restarts: 32,
    })
}
