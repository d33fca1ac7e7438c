use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::circuits::ancilla_register;
use crate::error::{Error, Result};
use crate::gates::NativeGateSet;
use crate::model::ModelParams;
use crate::noise::{PauliChannelSpec, TwoQuditMode};

pub const CONFIG_SCHEMA_VERSION: u32 = 1;

/// Noise switch applied on top of the configured spec.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseMode {
    PerTerm,
    #[default]
    Total,
    Off,
}

impl NoiseMode {
    pub fn label(self) -> &'static str {
        match self {
            NoiseMode::PerTerm => "per-term",
            NoiseMode::Total => "total",
            NoiseMode::Off => "off",
        }
    }
}

impl std::str::FromStr for NoiseMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "per-term" => Ok(NoiseMode::PerTerm),
            "total" => Ok(NoiseMode::Total),
            "off" => Ok(NoiseMode::Off),
            _ => Err(Error::InvalidArgument(format!("unknown noise mode {s:?}"))),
        }
    }
}

/// Envelope comparison used to locate the signal-loss step.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SignalLossConfig {
    /// Trotter steps per envelope window.
    pub window: usize,
    /// Loss when the noisy/noiseless envelope ratio drops below this.
    pub ratio_threshold: f64,
    /// Loss when the noisy envelope drops below this many standard errors.
    pub sigma_factor: f64,
}

impl Default for SignalLossConfig {
    fn default() -> Self {
        SignalLossConfig {
            window: 3,
            ratio_threshold: 0.1,
            sigma_factor: 2.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OverlapGrid {
    pub sizes: Vec<usize>,
    pub couplings: Vec<f64>,
}

impl Default for OverlapGrid {
    fn default() -> Self {
        OverlapGrid {
            sizes: (2..=9).collect(),
            couplings: (2..=10).map(f64::from).collect(),
        }
    }
}

/// Energies and momenta at which `G(E, p)` is tabulated.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpectralGrid {
    pub energies: Vec<f64>,
    pub momenta: Vec<f64>,
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    pub model: ModelParams,
    pub dt: f64,
    /// Largest Trotter step count; series cover `0..=steps`.
    pub steps: usize,
    pub natives: Vec<NativeGateSet>,
    pub noise: PauliChannelSpec,
    pub noise_mode: NoiseMode,
    /// Shots per expectation value.
    pub shots: u64,
    pub seed: u64,
    pub signal_loss: SignalLossConfig,
    pub overlap: OverlapGrid,
    pub spectral: Option<SpectralGrid>,
    /// Not part of the config hash.
    pub output: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            schema_version: CONFIG_SCHEMA_VERSION,
            model: ModelParams::default(),
            dt: 0.39,
            steps: 10,
            natives: vec![NativeGateSet::CsumNative, NativeGateSet::LzlzNative],
            noise: PauliChannelSpec::default(),
            noise_mode: NoiseMode::Total,
            shots: 10_000,
            seed: 0,
            signal_loss: SignalLossConfig::default(),
            overlap: OverlapGrid::default(),
            spectral: None,
            output: None,
        }
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text)?;
        if cfg.schema_version != CONFIG_SCHEMA_VERSION {
            return Err(Error::InvalidArgument(format!(
                "config schema version {} is not supported (expected {CONFIG_SCHEMA_VERSION})",
                cfg.schema_version
            )));
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// SHA-256 of the canonical JSON form, output path excluded.
    pub fn hash(&self) -> String {
        let mut canonical = self.clone();
        canonical.output = None;
        let json = serde_json::to_string(&canonical).expect("config serialises");
        Sha256::digest(json.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    /// Noise spec after applying `noise_mode`.
    pub fn effective_noise(&self) -> PauliChannelSpec {
        let mut spec = self.noise.clone();
        match self.noise_mode {
            NoiseMode::PerTerm => spec.two_qudit.mode = TwoQuditMode::PerTerm,
            NoiseMode::Total => spec.two_qudit.mode = TwoQuditMode::Total,
            NoiseMode::Off => spec = spec.scaled(0.0),
        }
        spec
    }

    /// Checks for the circuit experiments.
    pub fn validate_emulation(&self) -> Result<()> {
        self.model.validate()?;
        if self.shots == 0 {
            return Err(Error::ZeroShots);
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidArgument("dt must be positive".into()));
        }
        if self.natives.is_empty() {
            return Err(Error::InvalidArgument("no native gate set selected".into()));
        }
        if self.signal_loss.window == 0 {
            return Err(Error::InvalidArgument("signal-loss window must be positive".into()));
        }
        ancilla_register(&self.model)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_and_hash() {
        let cfg = ExperimentConfig::default();
        let back = ExperimentConfig::from_json(&cfg.to_json().unwrap()).unwrap();
        assert_eq!(back, cfg);
        assert_eq!(back.hash(), cfg.hash());
        let mut other = cfg.clone();
        other.output = Some("x.csv".into());
        assert_eq!(other.hash(), cfg.hash());
        other.seed = 1;
        assert_ne!(other.hash(), cfg.hash());
    }

    #[test]
    fn partial_config_fills_defaults() {
        let cfg = ExperimentConfig::from_json(r#"{"dt": 0.235, "model": {"n_s": 2}}"#).unwrap();
        assert_eq!(cfg.dt, 0.235);
        assert_eq!(cfg.model.n_s, 2);
        assert_eq!(cfg.model.u, 5.0);
        assert_eq!(cfg.shots, 10_000);
    }

    #[test]
    fn rejects_unknown_fields_and_versions() {
        assert!(ExperimentConfig::from_json(r#"{"dtt": 0.1}"#).is_err());
        assert!(ExperimentConfig::from_json(r#"{"schema_version": 7}"#).is_err());
    }

    #[test]
    fn emulation_checks() {
        let cfg = ExperimentConfig { shots: 0, ..Default::default() };
        assert!(matches!(cfg.validate_emulation(), Err(Error::ZeroShots)));
        let mut cfg = ExperimentConfig::default();
        cfg.model.n_s = 40;
        assert!(matches!(cfg.validate_emulation(), Err(Error::DimensionCap { .. })));
    }

    #[test]
    fn noise_modes() {
        let mut cfg = ExperimentConfig { noise_mode: NoiseMode::PerTerm, ..Default::default() };
        assert_eq!(cfg.effective_noise().two_qudit.mode, TwoQuditMode::PerTerm);
        cfg.noise_mode = NoiseMode::Off;
        assert_eq!(cfg.effective_noise().two_qudit.p, 0.0);
    }
}
