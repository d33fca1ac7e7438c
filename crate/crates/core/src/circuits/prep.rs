use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::fit::levenberg_marquardt;
use crate::gates::{rotation, subspace_hadamard, Axis, GateOp, GateSequence, NoiseClass};
use crate::linalg::{self, CMatrix, CVector, C64};
use crate::model::{onesite_ground_state, source_sink, ModelParams, OneSiteGroundState};
use crate::qudit::Register;
use crate::tolerance;

use super::circuit::{Circuit, CircuitMetadata};

/// Reference rounded `ω` angles at `g²a² = 5`.
pub const REFERENCE_OMEGA: [f64; 4] = [-0.65273, -1.43696, 1.7837, 2.65568];

/// Preparation angles: `ρ` for `V_g`, `ω` for the ancilla-branched preparation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrepAngles {
    pub rho1: f64,
    pub rho2: f64,
    pub omega: [f64; 4],
    /// Max-abs residual of the two prepared branches.
    pub residual: f64,
}

/// `V_g = R^y_{1,2}(−ρ₂)R^y_{0,1}(ρ₁)` on one site.
pub fn vg_sequence(gs: &OneSiteGroundState, site: usize) -> Result<GateSequence> {
    let mut seq = GateSequence::new();
    seq.push(GateOp::rotation(Axis::Y, 0, 1, gs.rho1, site, 3)?);
    seq.push(GateOp::rotation(Axis::Y, 1, 2, -gs.rho2, site, 3)?);
    Ok(seq)
}

fn require_spin_one(params: &ModelParams) -> Result<()> {
    if params.n_max != 1 {
        return Err(Error::Unsupported("state preparation is built for n_max = 1".into()));
    }
    if params.u <= 0.0 {
        return Err(Error::InvalidArgument("coupling must be positive".into()));
    }
    Ok(())
}

/// `V_g` on every working site.
pub fn build_vg(params: &ModelParams) -> Result<Circuit> {
    require_spin_one(params)?;
    let gs = onesite_ground_state(params)?;
    let mut seq = GateSequence::new();
    for s in 0..params.n_s {
        seq.append(vg_sequence(&gs, s)?);
    }
    Circuit::new(
        params.register()?,
        seq,
        CircuitMetadata {
            label: "vg".into(),
            ..Default::default()
        },
    )
}

/// `R^y_{0,1}(−a)·R^y_{1,2}(b)·R^y_{0,1}(a)` as a matrix.
fn sandwich(a: f64, b: f64) -> CMatrix {
    let r = |x, y, t| rotation(Axis::Y, x, y, t, 3).expect("valid pair");
    r(0, 1, -a) * r(1, 2, b) * r(0, 1, a)
}

fn shift() -> CMatrix {
    let mut s = CMatrix::zeros(3, 3);
    for j in 0..3 {
        s[((j + 1) % 3, j)] = linalg::ONE;
    }
    s
}

/// The two single-site branch states produced by `ω`: `(B₂B₁|0⟩, S†B₂SB₁|0⟩)`.
pub fn vprep_branches(omega: &[f64; 4]) -> (CVector, CVector) {
    let b1 = sandwich(omega[0], omega[1]);
    let b2 = sandwich(omega[2], omega[3]);
    let s = shift();
    let e0 = CVector::from_column_slice(&[linalg::ONE, linalg::ZERO, linalg::ZERO]);
    let first = &b1 * &e0;
    let zero = &b2 * &first;
    let one = s.adjoint() * &b2 * &s * first;
    (zero, one)
}

/// Target branch states `(Ψ₀, U⁺Ψ₀/𝒩′)` and `𝒩′`.
pub fn vprep_targets(gs: &OneSiteGroundState) -> Result<(CVector, CVector, f64)> {
    let psi = CVector::from_vec(gs.amplitudes_complex());
    let raised = source_sink(1)?.uplus * &psi;
    let norm = raised.norm();
    Ok((psi, raised / C64::new(norm, 0.0), norm))
}

fn branch_residual(omega: &[f64; 4], targets: &(CVector, CVector, f64)) -> f64 {
    let (zero, one) = vprep_branches(omega);
    // A common sign on both branches is a global phase.
    let mut best = f64::INFINITY;
    for sign in [1.0, -1.0] {
        let s = C64::new(sign, 0.0);
        let r = (&zero - &targets.0 * s).camax().max((&one - &targets.1 * s).camax());
        best = best.min(r);
    }
    best
}

fn wrap(angle: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let a = angle.rem_euclid(two_pi);
    if a > std::f64::consts::PI {
        a - two_pi
    } else {
        a
    }
}

/// Solve the four `ω` angles, starting from the reference values.
pub fn solve_prep_angles(params: &ModelParams) -> Result<PrepAngles> {
    require_spin_one(params)?;
    let gs = onesite_ground_state(params)?;
    let targets = vprep_targets(&gs)?;
    let mut best: Option<([f64; 4], f64)> = None;
    for sign in [1.0, -1.0] {
        let f = |w: &[f64]| {
            let (zero, one) = vprep_branches(&[w[0], w[1], w[2], w[3]]);
            let s = C64::new(sign, 0.0);
            (&zero - &targets.0 * s)
                .iter()
                .chain((&one - &targets.1 * s).iter())
                .map(|z| z.re)
                .collect::<Vec<f64>>()
        };
        let starts = [REFERENCE_OMEGA.to_vec(), vec![0.3, 0.5, -0.7, 1.1], vec![-1.0, 2.0, 1.0, -2.0]];
        for start in starts {
            let out = levenberg_marquardt(f, start, 800, 1e-14);
            let omega = [wrap(out.x[0]), wrap(out.x[1]), wrap(out.x[2]), wrap(out.x[3])];
            let res = branch_residual(&omega, &targets);
            if best.is_none_or(|(_, r)| res < r) {
                best = Some((omega, res));
            }
            if res < tolerance::DECOMPOSITION {
                break;
            }
        }
        if best.is_some_and(|(_, r)| r < tolerance::DECOMPOSITION) {
            break;
        }
    }
    let (omega, residual) = best.expect("at least one start");
    if residual > tolerance::DECOMPOSITION {
        return Err(Error::FitFailed { residual, restarts: 6 });
    }
    Ok(PrepAngles {
        rho1: gs.rho1,
        rho2: gs.rho2,
        omega,
        residual,
    })
}

/// Fidelity of the branch superposition prepared by `omega` with the target.
pub fn vprep_fidelity(params: &ModelParams, omega: &[f64; 4]) -> Result<f64> {
    let gs = onesite_ground_state(params)?;
    let targets = vprep_targets(&gs)?;
    let (zero, one) = vprep_branches(omega);
    let overlap = (targets.0.dotc(&zero) + targets.1.dotc(&one)) / C64::new(2.0, 0.0);
    Ok(overlap.norm_sqr())
}

/// Register layout of the correlator circuits: working sites, then the ancilla.
pub fn ancilla_register(params: &ModelParams) -> Result<Register> {
    params.validate()?;
    Register::new(vec![params.local_dim(); params.n_s + 1])
}

/// Ancilla superposition and branch-dependent preparation of working site `y`;
/// `V_g` on the other working sites.
pub fn vprep_sequence(params: &ModelParams, angles: &PrepAngles, y: usize) -> Result<GateSequence> {
    require_spin_one(params)?;
    let n_s = params.n_s;
    if y >= n_s {
        return Err(Error::SiteOutOfRange { site: y, num_sites: n_s });
    }
    let anc = n_s;
    let gs = onesite_ground_state(params)?;
    let w = angles.omega;
    let ry = |a, b, t| GateOp::rotation(Axis::Y, a, b, t, y, 3);
    let mut seq = GateSequence::new();
    seq.push(GateOp::labeled(
        "h01",
        vec![anc],
        subspace_hadamard(0, 1, 3)?,
        None,
        NoiseClass::OneQuditNoisy,
    ));
    seq.push(ry(0, 1, w[0])?);
    seq.push(ry(1, 2, w[1])?);
    seq.push(ry(0, 1, -w[0])?);
    seq.push(GateOp::csum(anc, y, 3, false)?);
    seq.push(ry(0, 1, w[2])?);
    seq.push(ry(1, 2, w[3])?);
    seq.push(ry(0, 1, -w[2])?);
    seq.push(GateOp::csum(anc, y, 3, true)?);
    for s in (0..n_s).filter(|&s| s != y) {
        seq.append(vg_sequence(&gs, s)?);
    }
    Ok(seq)
}

pub fn build_vprep(params: &ModelParams) -> Result<Circuit> {
    let angles = solve_prep_angles(params)?;
    Circuit::new(
        ancilla_register(params)?,
        vprep_sequence(params, &angles, 0)?,
        CircuitMetadata {
            label: "vprep".into(),
            ..Default::default()
        },
    )
}
