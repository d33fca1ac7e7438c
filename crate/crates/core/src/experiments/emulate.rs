use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuits::correlator::{readout_exact, readout_sampled};
use crate::circuits::{trotter_step_sequence, CorrelatorSetup, Part, Provenance};
use crate::error::Result;
use crate::gates::{GateSequence, NativeGateSet};
use crate::model::{CorrelatorOracle, InitialState};
use crate::noise::{attach_noise, NoiseModel, NoisePolicy};
use crate::qudit::{DensityMatrix, QuantumState, StateVector};
use crate::rng;

use super::config::{ExperimentConfig, SignalLossConfig};
use super::table::{num, CsvTable};

/// One point of a correlator time series.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesPoint {
    pub steps: usize,
    pub t: f64,
    pub re: f64,
    pub im: f64,
    pub err_re: f64,
    pub err_im: f64,
}

/// Exact, noiseless-circuit and noisy-circuit series for one native set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NativeSeries {
    pub native: NativeGateSet,
    pub exact: Vec<SeriesPoint>,
    pub noiseless: Vec<SeriesPoint>,
    pub noisy: Vec<SeriesPoint>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignalLossEntry {
    pub native: NativeGateSet,
    /// First Trotter step at which the signal counts as lost.
    pub loss_step: Option<usize>,
    /// Noisy over noiseless envelope of `Re 𝒞` per step.
    pub ratios: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignalLossReport {
    pub criterion: SignalLossConfig,
    pub entries: Vec<SignalLossEntry>,
}

impl SignalLossReport {
    pub fn loss_step(&self, native: NativeGateSet) -> Option<usize> {
        self.entries.iter().find(|e| e.native == native).and_then(|e| e.loss_step)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmulationResult {
    pub series: Vec<NativeSeries>,
    pub report: SignalLossReport,
}

fn apply(seq: &GateSequence, psi: &mut StateVector) -> Result<()> {
    for op in &seq.ops {
        psi.apply_unitary(&op.matrix, &op.sites)?;
    }
    Ok(())
}

fn point(steps: usize, t: f64, re: (f64, f64), im: (f64, f64)) -> SeriesPoint {
    SeriesPoint { steps, t, re: re.0, im: im.0, err_re: re.1, err_im: im.1 }
}

fn run_native(cfg: &ExperimentConfig, native: NativeGateSet, model: &NoiseModel) -> Result<NativeSeries> {
    let params = &cfg.model;
    let setup = CorrelatorSetup::new(params, 0, 0)?;
    let oracle = CorrelatorOracle::new(params, InitialState::Gamma)?;
    let step = trotter_step_sequence(params, cfg.dt, native)?;
    let noisy_step = attach_noise(&step, model)?;
    let parts = [Part::Real, Part::Imag];
    let suffixes = [setup.suffix(Part::Real)?, setup.suffix(Part::Imag)?];
    let noisy_suffixes = [attach_noise(&suffixes[0], model)?, attach_noise(&suffixes[1], model)?];

    let prefix = setup.prefix()?;
    let zero = vec![0; setup.register.num_sites()];
    let mut psi = StateVector::basis(setup.register.clone(), &zero)?;
    apply(&prefix, &mut psi)?;
    let mut rho = DensityMatrix::basis(setup.register.clone(), &zero)?;
    attach_noise(&prefix, model)?.run_density(&mut rho)?;

    let label = format!("emulate/{}", native.label());
    let mut out = NativeSeries { native, exact: vec![], noiseless: vec![], noisy: vec![] };
    for n in 0..=cfg.steps {
        if n > 0 {
            apply(&step, &mut psi)?;
            noisy_step.run_density(&mut rho)?;
        }
        let t = n as f64 * cfg.dt;
        let c = oracle.value(t, 0, 0)?;
        out.exact.push(point(n, t, (c.re, 0.0), (c.im, 0.0)));

        let mut clean = [(0.0, 0.0); 2];
        let mut noisy = [(0.0, 0.0); 2];
        for (k, part) in parts.into_iter().enumerate() {
            let readout = setup.readout(part);
            let mut s = psi.clone();
            apply(&suffixes[k], &mut s)?;
            clean[k] = (readout_exact(&s.probabilities(), &setup.register, &readout), 0.0);
            let mut r = rho.clone();
            noisy_suffixes[k].run_density(&mut r)?;
            let seed = rng::derive_seed(cfg.seed, &format!("{label}/{k}"), n as u64);
            let est = readout_sampled(&r, &readout, cfg.shots, seed)?;
            noisy[k] = (est.mean, est.err);
        }
        out.noiseless.push(point(n, t, clean[0], clean[1]));
        out.noisy.push(point(n, t, noisy[0], noisy[1]));
    }
    Ok(out)
}

/// Envelope of `|Re 𝒞|` over a window centred on each step.
fn envelope(points: &[SeriesPoint], window: usize) -> Vec<(f64, f64)> {
    let n = points.len();
    let back = (window - 1) / 2;
    let fwd = window / 2;
    (0..n)
        .map(|i| {
            let lo = i.saturating_sub(back);
            let hi = (i + fwd).min(n - 1);
            points[lo..=hi]
                .iter()
                .fold((0.0_f64, 0.0_f64), |(a, e), p| (a.max(p.re.abs()), e.max(p.err_re)))
        })
        .collect()
}

/// Signal-loss step of one native set.
pub fn signal_loss(series: &NativeSeries, criterion: &SignalLossConfig) -> SignalLossEntry {
    let noisy = envelope(&series.noisy, criterion.window);
    let clean = envelope(&series.noiseless, criterion.window);
    let ratios: Vec<f64> = noisy
        .iter()
        .zip(&clean)
        .map(|(n, c)| if c.0 > 0.0 { n.0 / c.0 } else { f64::NAN })
        .collect();
    let loss_step = (1..noisy.len()).find(|&i| {
        ratios[i] < criterion.ratio_threshold || noisy[i].0 < criterion.sigma_factor * noisy[i].1
    });
    SignalLossEntry { native: series.native, loss_step, ratios }
}

/// Exact, noiseless and noisy correlator series for every configured native set.
pub fn run_emulation(cfg: &ExperimentConfig) -> Result<EmulationResult> {
    cfg.validate_emulation()?;
    let model = NoiseModel::new(cfg.effective_noise(), NoisePolicy::default())?;
    let series = cfg
        .natives
        .par_iter()
        .map(|&native| run_native(cfg, native, &model))
        .collect::<Result<Vec<_>>>()?;
    let entries = series.iter().map(|s| signal_loss(s, &cfg.signal_loss)).collect();
    Ok(EmulationResult {
        series,
        report: SignalLossReport { criterion: cfg.signal_loss.clone(), entries },
    })
}

/// CSV rendering; the signal-loss report goes into the metadata lines.
pub fn emulation_table(cfg: &ExperimentConfig, result: &EmulationResult) -> CsvTable {
    let mut table = CsvTable::new(&["native", "N_t", "t", "re", "im", "stat_err_re", "stat_err_im", "provenance"]);
    super::standard_metadata(&mut table, cfg, "emulate", cfg.noise_mode.label());
    table.meta("dt", num(cfg.dt));
    table.meta("shots", cfg.shots);
    let c = &result.report.criterion;
    table.meta(
        "signal_loss_criterion",
        format!("window={} ratio_threshold={} sigma_factor={}", c.window, num(c.ratio_threshold), num(c.sigma_factor)),
    );
    for e in &result.report.entries {
        let step = e.loss_step.map_or("none".to_string(), |s| s.to_string());
        table.meta(&format!("signal_loss_step[{}]", e.native.label()), step);
    }
    for s in &result.series {
        for (points, prov) in [
            (&s.exact, Provenance::Exact),
            (&s.noiseless, Provenance::CircuitNoiseless),
            (&s.noisy, Provenance::CircuitNoisy),
        ] {
            for p in points {
                table.push(vec![
                    s.native.label().to_string(),
                    p.steps.to_string(),
                    num(p.t),
                    num(p.re),
                    num(p.im),
                    num(p.err_re),
                    num(p.err_im),
                    prov.label().to_string(),
                ]);
            }
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::config::NoiseMode;

    fn small() -> ExperimentConfig {
        let mut cfg = ExperimentConfig::default();
        cfg.model.n_s = 2;
        cfg.steps = 3;
        cfg.shots = 2000;
        cfg
    }

    #[test]
    fn zero_noise_noisy_series_is_sampled_noiseless() {
        let mut cfg = small();
        cfg.noise_mode = NoiseMode::Off;
        let r = run_emulation(&cfg).unwrap();
        for s in &r.series {
            for (a, b) in s.noisy.iter().zip(&s.noiseless) {
                assert!((a.re - b.re).abs() < 5.0 * a.err_re + 1e-12);
                assert!((a.im - b.im).abs() < 5.0 * a.err_im + 1e-12);
            }
        }
    }

    #[test]
    fn deterministic_output() {
        let cfg = small();
        let a = emulation_table(&cfg, &run_emulation(&cfg).unwrap()).render().unwrap();
        let b = emulation_table(&cfg, &run_emulation(&cfg).unwrap()).render().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn loss_detection_on_synthetic_series() {
        let pt = |n: usize, re: f64, err: f64| SeriesPoint { steps: n, t: 0.0, re, im: 0.0, err_re: err, err_im: 0.0 };
        let s = NativeSeries {
            native: NativeGateSet::CsumNative,
            exact: vec![],
            noiseless: (0..8).map(|n| pt(n, 0.5, 0.0)).collect(),
            noisy: (0..8).map(|n| pt(n, 0.5 * 0.5f64.powi(n as i32), 0.001)).collect(),
        };
        let e = signal_loss(&s, &SignalLossConfig::default());
        // 0.5^n envelope with window max over n-1..=n+1: ratio 0.5^(n-1) < 0.1 first at n = 5.
        assert_eq!(e.loss_step, Some(5));
    }
}
