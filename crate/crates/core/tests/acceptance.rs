//! Acceptance report: one PASS/FAIL line per criterion.
//!
//! A red criterion is reported, not raised; the process exits non-zero only
//! when a criterion cannot be evaluated at all.

use std::process::ExitCode;

use nalgebra::DMatrix;
use qsqed::circuits::correlator::readout_exact;
use qsqed::circuits::{
    build_qubit_lzlz, qubit::embedded_residual, solve_prep_angles, trotter_error, vprep_fidelity,
    CorrelatorSetup, Evolution, Part, REFERENCE_OMEGA,
};
use qsqed::experiments::{default_checks, run_checks, run_emulation, DecompositionCheck, ExperimentConfig, NoiseMode};
use qsqed::gates::{reference_lzlz_spin1, NativeGateSet};
use qsqed::linalg::{self, CMatrix, C64};
use qsqed::model::{
    build_hamiltonian, build_lz, build_uplus, build_ux, overlap_scan, reference_b, qubit_encoding,
    CorrelatorOracle, InitialState, ModelParams,
};
use qsqed::noise::{attach_noise, build_1q_channel, build_2q_channel, noiseless, NoiseModel, NoisePolicy, PauliChannelSpec, TwoQuditMode};
use qsqed::qudit::{DensityMatrix, QuantumState, Register};
use rand::Rng;
use rand_distr::StandardNormal;

type Outcome = Result<(bool, String), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn real(rows: usize, data: &[f64]) -> CMatrix {
    linalg::from_real(&DMatrix::from_row_slice(rows, rows, data))
}

fn c1_operators() -> Outcome {
    let lz = real(3, &[1., 0., 0., 0., 0., 0., 0., 0., -1.]);
    let ux = real(3, &[0., 0.5, 0., 0.5, 0., 0.5, 0., 0.5, 0.]);
    let up = real(3, &[0., 1., 0., 0., 0., 1., 0., 0., 0.]);
    let down = real(3, &[0., 0., 0., 1., 0., 0., 0., 1., 0.]);
    let uplus = build_uplus(1).map_err(err)?;
    let checks = [
        ("L^z", build_lz(1).map_err(err)? == lz),
        ("U^x", build_ux(1, false).map_err(err)? == ux),
        ("U^+", uplus == up),
        ("U^-", uplus.adjoint() == down),
    ];
    let bad: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    Ok((bad.is_empty(), if bad.is_empty() { "exact entry match".into() } else { format!("mismatch in {bad:?}") }))
}

fn c2_decompositions() -> Outcome {
    let mut checks = default_checks();
    checks.push(DecompositionCheck::new("lzlz_reference_three_csum", |theta| {
        let lz = build_lz(1)?;
        let target = linalg::expm_i_hermitian(&linalg::kron(&lz, &lz), theta);
        Ok(linalg::phase_aligned_residual(&target, &reference_lzlz_spin1(theta)?.matrix(&[3, 3])?).0)
    }));
    let report = run_checks(&checks, 100, 2024);
    let worst = report.entries.iter().map(|e| e.max_residual).fold(0.0, f64::max);
    let fails: Vec<String> = report.failures().iter().map(|e| e.name.clone()).collect();
    Ok((
        report.passed(),
        format!("{} checks x 100 angles, worst residual {worst:.2e}, failures {fails:?}", report.entries.len()),
    ))
}

fn c3_onesite() -> Outcome {
    let mut worst = 0.0_f64;
    for k in 0..=38 {
        let u = 1.0 + 0.5 * k as f64;
        let h = build_hamiltonian(&ModelParams::spin_one(1, u)).map_err(err)?.dense_real().map_err(err)?;
        let eig = h.symmetric_eigen();
        let i = eig.eigenvalues.imin();
        let v = eig.eigenvectors.column(i);
        let b_oracle = v[1] / v[0];
        worst = worst.max((reference_b(u) - b_oracle).abs());
    }
    Ok((
        worst < 1e-10,
        format!("reference closed form vs lowest eigenvector, max |Δb| = {worst:.3e} over coupling 1..20"),
    ))
}

fn c4_state_prep() -> Outcome {
    let p = ModelParams::spin_one(4, 5.0);
    let angles = solve_prep_angles(&p).map_err(err)?;
    let fid_solved = vprep_fidelity(&p, &angles.omega).map_err(err)?;
    let fid_reference = vprep_fidelity(&p, &REFERENCE_OMEGA).map_err(err)?;
    let dev = angles
        .omega
        .iter()
        .zip(REFERENCE_OMEGA)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok((
        dev <= 1e-3 && fid_solved >= 1.0 - 1e-9,
        format!(
            "solved omega {:?}, max |Δω| vs reference {dev:.3e}, fidelity solved {fid_solved:.12}, reference angles {fid_reference:.6}",
            angles.omega.map(|w| (w * 1e5).round() / 1e5)
        ),
    ))
}

fn c5_protocol() -> Outcome {
    let p = ModelParams::spin_one(4, 5.0);
    let oracle = CorrelatorOracle::new(&p, InitialState::Gamma).map_err(err)?;
    let setup = CorrelatorSetup::new(&p, 0, 0).map_err(err)?;
    let estimate = |ev: &Evolution| -> Result<C64, String> {
        let mut v = [0.0; 2];
        for (k, part) in [Part::Real, Part::Imag].into_iter().enumerate() {
            let c = setup.circuit(ev, part).map_err(err)?;
            let out = c.run_from_zero().map_err(err)?;
            v[k] = readout_exact(&out.probabilities(), &c.register, c.readout.as_ref().unwrap());
        }
        Ok(C64::new(v[0], v[1]))
    };
    let mut exact_dev = 0.0_f64;
    for t in [0.0, 0.7, 1.9, 3.9] {
        let d = (estimate(&Evolution::Exact { t })? - oracle.value(t, 0, 0).map_err(err)?).norm();
        exact_dev = exact_dev.max(d);
    }
    let mut ok = exact_dev < 1e-9;
    let mut worst_ratio = 0.0_f64;
    for dt in [0.39, 0.235, 0.31] {
        for n in 0..=10 {
            let ev = Evolution::Trotter { dt, steps: n, native: NativeGateSet::CsumNative };
            let dev = (estimate(&ev)? - oracle.value(dt * n as f64, 0, 0).map_err(err)?).norm();
            // Two propagators enter the correlator; ‖U⁻‖ = 1 and ‖U⁺Γ‖ = 𝒩′.
            let bound = 2.0 * trotter_error(&p, dt, n).map_err(err)? * setup.raised_norm + 1e-9;
            ok &= dev <= bound;
            if n > 0 {
                worst_ratio = worst_ratio.max(dev / bound);
            }
        }
    }
    Ok((
        ok,
        format!("exact-evolution deviation {exact_dev:.2e}; Trotterized deviation within 2·ε(N)·𝒩′ at dt 0.39/0.235/0.31, N ≤ 10 (largest deviation/bound {worst_ratio:.3})"),
    ))
}

fn c6_trotter_scaling() -> Outcome {
    let p = ModelParams::spin_one(2, 5.0);
    let mut ratios = vec![];
    for (dt, n) in [(0.39, 4), (0.2, 8), (0.1, 16)] {
        let coarse = trotter_error(&p, dt, n).map_err(err)?;
        let fine = trotter_error(&p, dt / 2.0, 2 * n).map_err(err)?;
        ratios.push(fine / coarse);
    }
    Ok((
        ratios.iter().all(|r| (0.4..=0.6).contains(r)),
        format!("error ratios on halving dt: {:?}", ratios.iter().map(|r| (r * 1e4).round() / 1e4).collect::<Vec<_>>()),
    ))
}

/// Random state of the given rank; rank 1 is pure and stresses positivity.
fn random_density(register: &Register, rank: usize, rng: &mut impl Rng) -> Result<DensityMatrix, String> {
    let n = register.total_dim();
    let g = CMatrix::from_fn(n, rank, |_, _| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)));
    let rho = &g * g.adjoint();
    let tr = rho.trace();
    DensityMatrix::new(register.clone(), rho / tr).map_err(err)
}

fn c7_noise() -> Outcome {
    let mut rng = qsqed::rng::stream(7, "acceptance-noise", 0);
    let reg = Register::uniform(2, 3).map_err(err)?;
    let mut worst_trace = 0.0_f64;
    let mut worst_eig = f64::INFINITY;
    for mode in [TwoQuditMode::PerTerm, TwoQuditMode::Total] {
        let spec = PauliChannelSpec::table(mode);
        let one = build_1q_channel(&spec).map_err(err)?;
        let two = build_2q_channel(&spec).map_err(err)?;
        worst_trace = worst_trace.max(one.completeness_deviation()).max(two.completeness_deviation());
        for k in 0..100 {
            let rank = if k % 2 == 0 { 1 } else { 9 };
            let mut rho = random_density(&reg, rank, &mut rng)?;
            rho.apply_channel(&one, &[1]).map_err(err)?;
            rho.apply_channel(&two, &[0, 1]).map_err(err)?;
            worst_trace = worst_trace.max((rho.trace() - C64::new(1.0, 0.0)).norm());
            worst_eig = worst_eig.min(rho.min_eigenvalue());
        }
    }
    let p = ModelParams::spin_one(2, 5.0);
    let setup = CorrelatorSetup::new(&p, 0, 0).map_err(err)?;
    let c = setup
        .circuit(&Evolution::Trotter { dt: 0.39, steps: 3, native: NativeGateSet::CsumNative }, Part::Real)
        .map_err(err)?;
    let zero = vec![0; c.register.num_sites()];
    let mut clean = DensityMatrix::basis(c.register.clone(), &zero).map_err(err)?;
    noiseless(&c.sequence).run_density(&mut clean).map_err(err)?;
    let model = NoiseModel::new(PauliChannelSpec::zero(), NoisePolicy::default()).map_err(err)?;
    let mut noisy = DensityMatrix::basis(c.register.clone(), &zero).map_err(err)?;
    attach_noise(&c.sequence, &model).map_err(err)?.run_density(&mut noisy).map_err(err)?;
    let zero_dev = linalg::max_abs_diff(clean.matrix(), noisy.matrix());
    Ok((
        worst_trace < 1e-12 && worst_eig >= -1e-10 && zero_dev < 1e-12,
        format!("trace deviation {worst_trace:.2e}, min eigenvalue {worst_eig:.2e}, zero-noise deviation {zero_dev:.2e}"),
    ))
}

fn c8_noisy_emulation() -> Outcome {
    let mut lines = vec![];
    let mut ordering = true;
    let mut bracketed = false;
    for mode in [NoiseMode::Total, NoiseMode::PerTerm] {
        let cfg = ExperimentConfig { noise_mode: mode, steps: 12, ..Default::default() };
        let r = run_emulation(&cfg).map_err(err)?;
        let csum = r.report.loss_step(NativeGateSet::CsumNative);
        let lzlz = r.report.loss_step(NativeGateSet::LzlzNative);
        let fmt = |s: Option<usize>| s.map_or("none".to_string(), |v| v.to_string());
        lines.push(format!("{}: csum {} lzlz {}", mode.label(), fmt(csum), fmt(lzlz)));
        // A set that never loses the signal within the run ranks above one that does.
        let rank = |s: Option<usize>| s.unwrap_or(usize::MAX);
        if rank(lzlz) < rank(csum) || (csum.is_some() && csum == lzlz) {
            ordering = false;
        }
        if let (Some(c), Some(l)) = (csum, lzlz) {
            bracketed |= (3..=6).contains(&c) && (7..=10).contains(&l);
        }
    }
    Ok((ordering && bracketed, format!("loss steps ({})", lines.join("; "))))
}

fn c9_gate_counts() -> Outcome {
    let table = qsqed::experiments::cmd_gate_counts(&ExperimentConfig::default()).map_err(err)?;
    let got: Vec<Vec<String>> = table.rows.clone();
    let expected = [["Ux", "15", "3", "5", "0"], ["Lz2", "1", "0", "2", "0"], ["LzLz", "4", "8", "4", "3"]];
    let ok = got.len() == 3 && got.iter().zip(expected).all(|(g, e)| g.iter().map(String::as_str).eq(e));
    Ok((ok, format!("rows {got:?}")))
}

fn c10_qubit() -> Outcome {
    let enc = qubit_encoding(1).map_err(err)?;
    let restrict = enc.restriction_error().map_err(err)?;
    let mut rng = qsqed::rng::stream(10, "acceptance-qubit", 0);
    let lz = build_lz(1).map_err(err)?;
    let mut worst = 0.0_f64;
    for _ in 0..20 {
        let theta: f64 = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
        let target = linalg::expm_i_hermitian(&linalg::kron(&lz, &lz), theta);
        let u = build_qubit_lzlz(theta).map_err(err)?.unitary().map_err(err)?;
        worst = worst.max(embedded_residual(&u, &target));
    }
    Ok((
        restrict < 1e-12 && worst < 1e-9,
        format!("restriction error {restrict:.2e} (U^x string with prefactor 1/4), L^zL^z circuit residual {worst:.2e} over 20 angles"),
    ))
}

fn c11_overlap() -> Outcome {
    let couplings: Vec<f64> = (2..=10).map(f64::from).collect();
    let sizes: Vec<usize> = (2..=9).collect();
    let rows = overlap_scan(&ModelParams::default(), &sizes, &couplings).map_err(err)?;
    let complete = rows.len() == sizes.len() * couplings.len();
    let at = rows
        .iter()
        .find(|r| r.n_s == 4 && r.coupling == 5.0)
        .map(|r| r.overlap_gamma)
        .ok_or("missing (4, 5) row")?;
    Ok((complete && at > 0.9, format!("{} grid points, overlap at n_s=4, coupling 5: {at:.6}", rows.len())))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("operator fidelity", c1_operators),
        ("decomposition equivalence", c2_decompositions),
        ("one-site ground state closed form", c3_onesite),
        ("state-preparation angles", c4_state_prep),
        ("correlator protocol", c5_protocol),
        ("Trotter scaling", c6_trotter_scaling),
        ("noise channels", c7_noise),
        ("noisy emulation signal loss", c8_noisy_emulation),
        ("gate-count table", c9_gate_counts),
        ("qubit embedding", c10_qubit),
        ("overlap scan", c11_overlap),
    ];
    let mut broken = false;
    let mut passed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok((ok, detail)) => {
                passed += ok as usize;
                println!("{} criterion {:2} {name}: {detail}", if ok { "PASS" } else { "FAIL" }, i + 1);
            }
            Err(e) => {
                broken = true;
                println!("FAIL criterion {:2} {name}: could not evaluate: {e}", i + 1);
            }
        }
    }
    println!("acceptance: {passed} of {} criteria pass", criteria.len());
    if broken {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
