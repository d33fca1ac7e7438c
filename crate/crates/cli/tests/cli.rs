use std::process::{Command, Output};

fn qsqed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsqed"))
        .args(args)
        .env("RUST_LOG", "warn")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data_lines(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn gate_counts_table() {
    let o = qsqed(&["gate-counts"]);
    assert!(o.status.success());
    assert_eq!(
        data_lines(&stdout(&o)),
        ["term,qubit_1q,qubit_2q,qutrit_1q,qutrit_2q", "Ux,15,3,5,0", "Lz2,1,0,2,0", "LzLz,4,8,4,3"]
    );
}

#[test]
fn verify_decompositions_passes() {
    let o = qsqed(&["verify-decompositions", "--seed", "5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("PASS lzlz_csum_d3 max_residual=")));
    assert!(!text.contains("FAIL"));
}

#[test]
fn emulate_rejects_zero_shots() {
    let o = qsqed(&["emulate", "--shots", "0"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("shot"));
}

#[test]
fn emulate_rejects_qubit_native() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"model": {"n_s": 2}, "steps": 1}"#).unwrap();
    let o = qsqed(&["emulate", "--config", cfg.to_str().unwrap(), "--native", "qubit"]);
    assert!(!o.status.success());
}

#[test]
fn unknown_flag_values_rejected() {
    assert!(!qsqed(&["emulate", "--native", "cnot"]).status.success());
    assert!(!qsqed(&["emulate", "--noise-mode", "loud"]).status.success());
}

#[test]
fn emulate_is_byte_identical_for_identical_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"schema_version": 1, "model": {"n_s": 2}, "steps": 2, "shots": 300, "seed": 4}"#).unwrap();
    let mut outputs = vec![];
    for name in ["a.csv", "b.csv"] {
        let out = dir.path().join(name);
        let o = qsqed(&["emulate", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        outputs.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let text = String::from_utf8(outputs[0].clone()).unwrap();
    assert!(text.contains("# seed: 4"));
    assert!(text.contains("# noise_mode: total"));
    assert!(text.lines().any(|l| l.starts_with("# signal_loss_step[csum]: ")));
    let rows = data_lines(&text);
    assert_eq!(rows[0], "native,N_t,t,re,im,stat_err_re,stat_err_im,provenance");
    // Two native sets, three series, three time points.
    assert_eq!(rows.len(), 1 + 2 * 3 * 3);
}

#[test]
fn flags_override_config() {
    let o = qsqed(&["exact-correlator", "--dt", "0.25", "--steps", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let ts: Vec<&str> = data_lines(&text).iter().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(ts, ["0", "0.25", "0.5", "0.75"]);
}

#[test]
fn exact_correlator_writes_spectral_table() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"model": {"n_s": 2}, "steps": 4, "dt": 0.5, "spectral": {"energies": [0.0, 1.0], "momenta": [0.0]}}"#).unwrap();
    let out = dir.path().join("corr.csv");
    let o = qsqed(&["exact-correlator", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let spectral = std::fs::read_to_string(dir.path().join("corr_spectral.csv")).unwrap();
    assert_eq!(data_lines(&spectral).len(), 3);
}

#[test]
fn dimension_cap_is_configurable() {
    let o = Command::new(env!("CARGO_BIN_EXE_qsqed"))
        .args(["emulate", "--steps", "1", "--shots", "10"])
        .env("QSQED_DIM_CAP", "100")
        .output()
        .unwrap();
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}

#[test]
fn overlap_scan_small_grid() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"overlap": {"sizes": [1, 2], "couplings": [5.0]}}"#).unwrap();
    let o = qsqed(&["overlap-scan", "--config", cfg.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows = data_lines(&text);
    assert_eq!(rows[0], "n_s,coupling,overlap_gamma,overlap_111");
    assert!(rows[1].starts_with("1,5,1"));
}
