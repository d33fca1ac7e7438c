use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::circuits::qubit::embedded_residual;
use crate::circuits::{build_qubit_lzlz, trotter_product_oracle, trotter_step_sequence};
use crate::error::Result;
use crate::gates::{decompose_diagonal_rotation, decompose_lzlz, decompose_ux, GateSequence, NativeGateSet, UxMode};
use crate::linalg::{self, CMatrix};
use crate::model::{build_lz, build_ux, lz_diagonal, ModelParams};
use crate::rng;
use crate::tolerance::DECOMPOSITION;

/// A decomposition check: residual against its target for one angle.
pub struct DecompositionCheck {
    pub name: String,
    pub run: Box<dyn Fn(f64) -> Result<f64> + Send + Sync>,
}

impl DecompositionCheck {
    pub fn new(name: impl Into<String>, run: impl Fn(f64) -> Result<f64> + Send + Sync + 'static) -> Self {
        DecompositionCheck { name: name.into(), run: Box::new(run) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationEntry {
    pub name: String,
    pub samples: usize,
    pub max_residual: f64,
    pub passed: bool,
    /// Set when the construction itself failed.
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub tolerance: f64,
    pub entries: Vec<VerificationEntry>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> Vec<&VerificationEntry> {
        self.entries.iter().filter(|e| !e.passed).collect()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let status = if e.passed { "PASS" } else { "FAIL" };
            match &e.error {
                Some(err) => out.push_str(&format!("{status} {} error: {err}\n", e.name)),
                None => out.push_str(&format!(
                    "{status} {} max_residual={:.3e} samples={}\n",
                    e.name, e.max_residual, e.samples
                )),
            }
        }
        let n_fail = self.failures().len();
        out.push_str(&format!(
            "{} of {} decompositions within {:.0e}\n",
            self.entries.len() - n_fail,
            self.entries.len(),
            self.tolerance
        ));
        out
    }
}

fn residual(seq: &GateSequence, dims: &[usize], target: &CMatrix) -> Result<f64> {
    Ok(linalg::phase_aligned_residual(target, &seq.matrix(dims)?).0)
}

fn lzlz_target(n_max: usize, theta: f64) -> Result<CMatrix> {
    let lz = build_lz(n_max)?;
    Ok(linalg::expm_i_hermitian(&linalg::kron(&lz, &lz), theta))
}

/// Every decomposition the simulator relies on.
pub fn default_checks() -> Vec<DecompositionCheck> {
    let mut checks = Vec::new();
    for n_max in 1..=5usize {
        let d = 2 * n_max + 1;
        for power in [1, 2] {
            let name = if power == 1 { format!("lz_rotation_d{d}") } else { format!("lz2_rotation_d{d}") };
            checks.push(DecompositionCheck::new(name, move |theta| {
                let diag: Vec<f64> = lz_diagonal(n_max)?.iter().map(|m| m.powi(power)).collect();
                let target = linalg::expm_i_hermitian(&linalg::real_diag(&diag), theta);
                residual(&decompose_diagonal_rotation(theta, &diag)?, &[d], &target)
            }));
        }
    }
    for n_max in 1..=3usize {
        let d = 2 * n_max + 1;
        for c_bound in [false, true] {
            let tag = if c_bound { "_cyclic" } else { "" };
            checks.push(DecompositionCheck::new(format!("ux_rotation_d{d}{tag}"), move |theta| {
                let target = linalg::expm_i_hermitian(&build_ux(n_max, c_bound)?, theta);
                residual(&decompose_ux(theta, n_max, c_bound, UxMode::Exact)?, &[d], &target)
            }));
        }
        checks.push(DecompositionCheck::new(format!("lzlz_csum_d{d}"), move |theta| {
            let seq = decompose_lzlz(theta, n_max, NativeGateSet::CsumNative)?;
            residual(&seq, &[d, d], &lzlz_target(n_max, theta)?)
        }));
    }
    checks.push(DecompositionCheck::new("lzlz_qubit_embedded", |theta| {
        let c = build_qubit_lzlz(theta)?;
        Ok(embedded_residual(&c.unitary()?, &lzlz_target(1, theta)?))
    }));
    checks.push(DecompositionCheck::new("trotter_step_n2", |theta| {
        let p = ModelParams::spin_one(2, 5.0);
        let dt = theta.abs() / 4.0;
        let mut worst = 0.0_f64;
        for native in [NativeGateSet::CsumNative, NativeGateSet::LzlzNative] {
            let seq = trotter_step_sequence(&p, dt, native)?;
            let r = linalg::max_abs_diff(&seq.matrix(&[3, 3])?, &trotter_product_oracle(&p, dt)?);
            worst = worst.max(r);
        }
        Ok(worst)
    }));
    checks
}

/// Run `checks` at `samples` angles drawn uniformly from `(−π, π)`.
pub fn run_checks(checks: &[DecompositionCheck], samples: usize, seed: u64) -> VerificationReport {
    use rayon::prelude::*;
    let pi = std::f64::consts::PI;
    let entries = checks
        .par_iter()
        .enumerate()
        .map(|(i, check)| {
            let mut r = rng::stream(seed, "verify", i as u64);
            let mut worst = 0.0_f64;
            for _ in 0..samples {
                let theta = r.random_range(-pi..pi);
                match (check.run)(theta) {
                    Ok(res) => worst = worst.max(res),
                    Err(e) => {
                        return VerificationEntry {
                            name: check.name.clone(),
                            samples,
                            max_residual: f64::INFINITY,
                            passed: false,
                            error: Some(e.to_string()),
                        }
                    }
                }
            }
            VerificationEntry {
                name: check.name.clone(),
                samples,
                max_residual: worst,
                passed: worst <= DECOMPOSITION,
                error: None,
            }
        })
        .collect();
    VerificationReport { tolerance: DECOMPOSITION, entries }
}

pub fn cmd_verify_decompositions(seed: u64) -> VerificationReport {
    run_checks(&default_checks(), 100, seed)
}
