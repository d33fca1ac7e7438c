use proptest::prelude::*;
use qsqed::circuits::{
    build_trotter_step, estimate_correlator, hadamard_correlator, Backend, CorrelatorSetup, Evolution,
};
use qsqed::gates::NativeGateSet;
use qsqed::model::{CorrelatorOracle, InitialState, ModelParams};

#[test]
fn hadamard_test_and_ancilla_protocol_agree_under_trotterization() {
    let p = ModelParams::spin_one(3, 5.0);
    for (x, y) in [(0, 0), (2, 1)] {
        let setup = CorrelatorSetup::new(&p, x, y).unwrap();
        for steps in [1, 4] {
            let ev = Evolution::Trotter { dt: 0.31, steps, native: NativeGateSet::LzlzNative };
            let a = estimate_correlator(&setup, &ev, &Backend::Exact, 0).unwrap().value();
            let b = hadamard_correlator(&p, &ev, x, y, &Backend::Exact, 0).unwrap();
            assert!((a - b).norm() < 1e-9, "x={x} y={y} steps={steps}: {a} vs {b}");
        }
    }
}

#[test]
fn native_sets_build_the_same_step() {
    let p = ModelParams::spin_one(3, 4.0);
    let a = build_trotter_step(&p, 0.2, NativeGateSet::CsumNative).unwrap().unitary().unwrap();
    let b = build_trotter_step(&p, 0.2, NativeGateSet::LzlzNative).unwrap().unitary().unwrap();
    assert!(qsqed::linalg::phase_aligned_residual(&a, &b).0 < 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn protocol_with_exact_evolution_is_the_oracle(t in 0.0f64..6.0, x in 0usize..3, y in 0usize..3, u in 1.0f64..10.0) {
        let p = ModelParams::spin_one(3, u);
        let setup = CorrelatorSetup::new(&p, x, y).unwrap();
        let est = estimate_correlator(&setup, &Evolution::Exact { t }, &Backend::Exact, 0).unwrap();
        let oracle = CorrelatorOracle::new(&p, InitialState::Gamma).unwrap().value(t, x, y).unwrap();
        prop_assert!((est.value() - oracle).norm() < 1e-9);
    }
}
