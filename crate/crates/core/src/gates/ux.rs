use std::f64::consts::{FRAC_PI_4, SQRT_2};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::model::operators::build_ux;
use crate::tolerance;

use super::diagonal::decompose_diagonal_rotation;
use super::pauli::Axis;
use super::sequence::{GateOp, GateSequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UxMode {
    Exact,
    Trotterized,
}

fn ry(a: usize, b: usize, angle: f64, d: usize) -> Result<GateOp> {
    GateOp::rotation(Axis::Y, a, b, angle, 0, d)
}

fn rz(a: usize, b: usize, angle: f64, d: usize) -> Result<GateOp> {
    GateOp::rotation(Axis::Z, a, b, angle, 0, d)
}

/// The reference five-rotation spin-1 form, gates in time order.
pub fn reference_ux_spin1(theta: f64) -> Result<GateSequence> {
    let mut seq = GateSequence::new();
    seq.push(ry(0, 1, FRAC_PI_4, 3)?);
    seq.push(ry(0, 2, -FRAC_PI_4, 3)?);
    seq.push(rz(0, 1, theta * SQRT_2 / 2.0, 3)?);
    seq.push(ry(0, 2, FRAC_PI_4, 3)?);
    seq.push(ry(0, 1, -FRAC_PI_4, 3)?);
    Ok(seq)
}

/// Five-rotation spin-1 form with the basis change applied in the right order.
pub fn corrected_ux_spin1(theta: f64) -> Result<GateSequence> {
    let mut seq = GateSequence::new();
    seq.push(ry(0, 2, -FRAC_PI_4, 3)?);
    seq.push(ry(0, 1, -FRAC_PI_4, 3)?);
    seq.push(rz(0, 1, theta * SQRT_2 / 2.0, 3)?);
    seq.push(ry(0, 1, FRAC_PI_4, 3)?);
    seq.push(ry(0, 2, FRAC_PI_4, 3)?);
    Ok(seq)
}

fn residual(seq: &GateSequence, theta: f64, n_max: usize, c_bound: bool) -> Result<f64> {
    let d = 2 * n_max + 1;
    let target = linalg::expm_i_hermitian(&build_ux(n_max, c_bound)?, theta);
    Ok(linalg::phase_aligned_residual(&target, &seq.matrix(&[d])?).0)
}

/// Givens angles `φ` (plane `(a, b)`) whose `R^y` product takes `v` to a signed diagonal.
fn givens_reduction(mut v: DMatrix<f64>) -> Vec<(usize, usize, f64)> {
    let d = v.nrows();
    let mut out = Vec::new();
    for j in 0..d.saturating_sub(1) {
        for i in (j + 1..d).rev() {
            let (top, bottom) = (v[(j, j)], v[(i, j)]);
            if bottom == 0.0 {
                continue;
            }
            let phi = (-bottom).atan2(top);
            let (s, c) = phi.sin_cos();
            for col in 0..d {
                let (x, y) = (v[(j, col)], v[(i, col)]);
                v[(j, col)] = c * x - s * y;
                v[(i, col)] = s * x + c * y;
            }
            out.push((j, i, phi));
        }
    }
    out
}

fn exact_general(theta: f64, n_max: usize, c_bound: bool) -> Result<GateSequence> {
    let d = 2 * n_max + 1;
    let ux = build_ux(n_max, c_bound)?;
    let real = ux.map(|z| z.re);
    let eig = real.symmetric_eigen();
    let rotations = givens_reduction(eig.eigenvectors.clone());
    let mut seq = GateSequence::new();
    for &(a, b, phi) in &rotations {
        seq.push(ry(a, b, phi, d)?);
    }
    let lambdas: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    seq.append(decompose_diagonal_rotation(theta, &lambdas)?);
    for &(a, b, phi) in rotations.iter().rev() {
        seq.push(ry(a, b, -phi, d)?);
    }
    Ok(seq)
}

fn trotterized(theta: f64, n_max: usize, c_bound: bool) -> Result<GateSequence> {
    let d = 2 * n_max + 1;
    let mut seq = GateSequence::new();
    for j in 0..d - 1 {
        seq.push(GateOp::rotation(Axis::X, j, j + 1, theta / 2.0, 0, d)?);
    }
    if c_bound {
        seq.push(GateOp::rotation(Axis::X, 0, d - 1, theta / 2.0, 0, d)?);
    }
    Ok(seq)
}

/// `e^{iθ U^x}` on site 0.
pub fn decompose_ux(theta: f64, n_max: usize, c_bound: bool, mode: UxMode) -> Result<GateSequence> {
    if !theta.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite angle {theta}")));
    }
    if mode == UxMode::Trotterized {
        return trotterized(theta, n_max, c_bound);
    }
    let candidates: Vec<GateSequence> = if n_max == 1 && !c_bound {
        vec![reference_ux_spin1(theta)?, corrected_ux_spin1(theta)?]
    } else {
        vec![]
    };
    for (k, seq) in candidates.into_iter().enumerate() {
        let res = residual(&seq, theta, n_max, c_bound)?;
        if res < tolerance::DECOMPOSITION {
            return Ok(seq);
        }
        if k == 0 {
            log::debug!("reference U^x rotation order misses by {res:.3e}; using reordered form");
        }
    }
    let seq = exact_general(theta, n_max, c_bound)?;
    let res = residual(&seq, theta, n_max, c_bound)?;
    if res > tolerance::DECOMPOSITION {
        return Err(Error::Verification {
            name: format!("ux n_max={n_max}"),
            residual: res,
        });
    }
    Ok(seq)
}
