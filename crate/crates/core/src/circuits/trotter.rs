use crate::error::{Error, Result};
use crate::gates::{decompose_diagonal_rotation, decompose_lzlz, decompose_ux, GateSequence, NativeGateSet, UxMode};
use crate::linalg::{self, CMatrix};
use crate::model::{build_hamiltonian, build_lz, build_lz2, build_ux, lz_diagonal, ModelParams};
use crate::qudit::Register;

use super::circuit::{Circuit, CircuitMetadata};
use super::qubit::{calibrate_qubit_rz, qubit_lz2_sequence, qubit_lzlz_sequence, qubit_ux_sequence};

/// Bonds `(i, i+1)` of an open chain: even-indexed bonds first, then odd.
pub fn bond_layout(n_s: usize) -> Vec<(usize, usize)> {
    let even = (0..n_s.saturating_sub(1)).step_by(2);
    let odd = (1..n_s.saturating_sub(1)).step_by(2);
    even.chain(odd).map(|i| (i, i + 1)).collect()
}

/// Angles of the three Trotter factors: `((L^z)², L^zL^z, U^x)`.
pub fn trotter_angles(params: &ModelParams, dt: f64) -> (f64, f64, f64) {
    (-dt * params.lz2_coeff(), -dt * params.y, dt * params.x)
}

/// One first-order Trotter step on the working sites, in time order:
/// the `(L^z)²` layer, the `L^zL^z` bonds, then the `U^x` layer.
/// Sites are qudits, or qubit pairs `(2s, 2s+1)` for the qubit encoding.
pub fn trotter_step_sequence(params: &ModelParams, dt: f64, native: NativeGateSet) -> Result<GateSequence> {
    params.validate()?;
    if !dt.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite time step {dt}")));
    }
    let (t_e, t_b, t_x) = trotter_angles(params, dt);
    let n_s = params.n_s;
    let mut seq = GateSequence::new();
    if native == NativeGateSet::QubitCnot {
        if params.n_max != 1 || params.c_bound {
            return Err(Error::Unsupported(
                "the qubit encoding covers n_max = 1 without the corner hop".into(),
            ));
        }
        let c = calibrate_qubit_rz()?.c;
        for s in 0..n_s {
            seq.append(qubit_lz2_sequence(t_e, 2 * s));
        }
        for (a, b) in bond_layout(n_s) {
            let map = [2 * a, 2 * a + 1, 2 * b, 2 * b + 1];
            seq.append(qubit_lzlz_sequence(c * t_b).relabel(&map)?);
        }
        let ux = qubit_ux_sequence(t_x, 0)?;
        for s in 0..n_s {
            seq.append(ux.clone().relabel(&[2 * s, 2 * s + 1])?);
        }
        return Ok(seq);
    }
    let lz2: Vec<f64> = lz_diagonal(params.n_max)?.iter().map(|m| m * m).collect();
    let electric = decompose_diagonal_rotation(t_e, &lz2)?;
    for s in 0..n_s {
        seq.append(electric.clone().relabel(&[s])?);
    }
    let bond = decompose_lzlz(t_b, params.n_max, native)?;
    for (a, b) in bond_layout(n_s) {
        seq.append(bond.clone().relabel(&[a, b])?);
    }
    let hop = decompose_ux(t_x, params.n_max, params.c_bound, UxMode::Exact)?;
    for s in 0..n_s {
        seq.append(hop.clone().relabel(&[s])?);
    }
    Ok(seq)
}

pub fn build_trotter_step(params: &ModelParams, dt: f64, native: NativeGateSet) -> Result<Circuit> {
    let seq = trotter_step_sequence(params, dt, native)?;
    let register = match native {
        NativeGateSet::QubitCnot => Register::uniform(2 * params.n_s, 2)?,
        _ => params.register()?,
    };
    Circuit::new(
        register,
        seq,
        CircuitMetadata {
            label: "trotter_step".into(),
            native: Some(native),
            dt: Some(dt),
            steps: Some(1),
        },
    )
}

fn embed(op: &CMatrix, sites: &[usize], n_s: usize, d: usize) -> CMatrix {
    let mut factors = Vec::new();
    let mut s = 0;
    while s < n_s {
        if s == sites[0] {
            factors.push(op.clone());
            s += sites.len();
        } else {
            factors.push(linalg::identity(d));
            s += 1;
        }
    }
    linalg::kron_all(factors.iter())
}

/// Dense `e^{iθ_x ΣU^x}·e^{iθ_b ΣL^zL^z}·e^{iθ_e Σ(L^z)²}` built from
/// tensor products, for checking the Trotter circuits.
pub fn trotter_product_oracle(params: &ModelParams, dt: f64) -> Result<CMatrix> {
    let (t_e, t_b, t_x) = trotter_angles(params, dt);
    let d = params.local_dim();
    let n = params.n_s;
    let dim = d.pow(n as u32);
    let lz = build_lz(params.n_max)?;
    let mut e = CMatrix::zeros(dim, dim);
    let mut b = CMatrix::zeros(dim, dim);
    let mut x = CMatrix::zeros(dim, dim);
    for s in 0..n {
        e += embed(&build_lz2(params.n_max)?, &[s], n, d);
        x += embed(&build_ux(params.n_max, params.c_bound)?, &[s], n, d);
    }
    for s in 0..n.saturating_sub(1) {
        b += embed(&linalg::kron(&lz, &lz), &[s, s + 1], n, d);
    }
    Ok(linalg::expm_i_hermitian(&x, t_x) * linalg::expm_i_hermitian(&b, t_b) * linalg::expm_i_hermitian(&e, t_e))
}

/// `‖U_tr(δt)^{N} − e^{−iHNδt}‖` in operator norm.
pub fn trotter_error(params: &ModelParams, dt: f64, steps: usize) -> Result<f64> {
    let step = trotter_product_oracle(params, dt)?;
    let h = build_hamiltonian(params)?.dense()?;
    let exact = linalg::expm_i_hermitian(&h, -(dt * steps as f64));
    let mut u = linalg::identity(step.nrows());
    for _ in 0..steps {
        u = &step * u;
    }
    Ok(linalg::operator_norm(&(u - exact)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::NoiseClass;
    use crate::model::embedding_isometry;

    #[test]
    fn bonds_even_then_odd() {
        assert_eq!(bond_layout(4), vec![(0, 1), (2, 3), (1, 2)]);
        assert_eq!(bond_layout(1), vec![]);
    }

    #[test]
    fn matches_product_oracle() {
        let p = ModelParams::spin_one(2, 5.0);
        for native in [NativeGateSet::CsumNative, NativeGateSet::LzlzNative] {
            for dt in [0.0, 0.39, -0.77] {
                let c = build_trotter_step(&p, dt, native).unwrap();
                let res = linalg::phase_aligned_residual(&trotter_product_oracle(&p, dt).unwrap(), &c.unitary().unwrap()).0;
                assert!(res < 1e-9, "{native:?} {dt} {res}");
            }
        }
    }

    #[test]
    fn two_qudit_count_per_step() {
        let c = build_trotter_step(&ModelParams::default(), 0.39, NativeGateSet::CsumNative).unwrap();
        assert_eq!(c.sequence.count(NoiseClass::TwoQudit), 9);
        let c = build_trotter_step(&ModelParams::default(), 0.39, NativeGateSet::LzlzNative).unwrap();
        assert_eq!(c.sequence.count(NoiseClass::TwoQudit), 3);
    }

    #[test]
    fn qubit_step_matches_qutrit_step_on_embedded_space() {
        let p = ModelParams::spin_one(2, 5.0);
        let q = build_trotter_step(&p, 0.3, NativeGateSet::QubitCnot).unwrap().unitary().unwrap();
        let iso = embedding_isometry();
        let v = linalg::kron(&iso, &iso);
        let restricted = v.adjoint() * q * &v;
        let res = linalg::phase_aligned_residual(&trotter_product_oracle(&p, 0.3).unwrap(), &restricted).0;
        assert!(res < 1e-9, "{res}");
    }

    #[test]
    fn first_order_error_scaling() {
        let p = ModelParams::spin_one(2, 5.0);
        let ratio = trotter_error(&p, 0.05, 20).unwrap() / trotter_error(&p, 0.1, 10).unwrap();
        assert!((0.4..=0.6).contains(&ratio), "{ratio}");
    }
}
