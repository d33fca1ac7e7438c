use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use qsqed::experiments::{
    cmd_exact_correlator, cmd_gate_counts, cmd_overlap_scan, cmd_verify_decompositions, emulation_table,
    run_emulation, ExperimentConfig, NoiseMode,
};
use qsqed::gates::NativeGateSet;

/// Qudit simulator for spin-truncated (1+1)d scalar QED.
#[derive(Parser, Debug)]
#[command(name = "qsqed", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every gate decomposition against its target exponential.
    VerifyDecompositions(Common),
    /// Ground-state overlaps over lattice size and coupling.
    OverlapScan(Common),
    /// Primitive gate counts per Hamiltonian term.
    GateCounts(Common),
    /// Exact, noiseless-circuit and noisy-circuit correlator series.
    Emulate(Common),
    /// Exact correlator on a time grid, optionally with G(E, p).
    ExactCorrelator {
        #[command(flatten)]
        common: Common,
        /// Where to write the spectral table (default: next to --out).
        #[arg(long)]
        spectral_out: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// JSON experiment config; omitted fields take their defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// Restrict to one native gate set: csum, lzlz or qubit.
    #[arg(long)]
    native: Option<NativeGateSet>,
    /// per-term, total or off.
    #[arg(long)]
    noise_mode: Option<NoiseMode>,
    #[arg(long)]
    shots: Option<u64>,
}

impl Common {
    fn config(&self) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::load(path)
                .with_context(|| format!("reading config {}", path.display()))?,
            None => ExperimentConfig::default(),
        };
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.dt {
            cfg.dt = v;
        }
        if let Some(v) = self.steps {
            cfg.steps = v;
        }
        if let Some(v) = self.native {
            cfg.natives = vec![v];
        }
        if let Some(v) = self.noise_mode {
            cfg.noise_mode = v;
        }
        if let Some(v) = self.shots {
            cfg.shots = v;
        }
        if let Some(v) = &self.out {
            cfg.output = Some(v.clone());
        }
        Ok(cfg)
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn spectral_path(explicit: Option<PathBuf>, out: Option<&Path>) -> Option<PathBuf> {
    explicit.or_else(|| {
        out.map(|p| {
            let stem = p.file_stem().and_then(|s| s.to_str()).unwrap_or("correlator");
            p.with_file_name(format!("{stem}_spectral.csv"))
        })
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::VerifyDecompositions(common) => {
            let cfg = common.config()?;
            let report = cmd_verify_decompositions(cfg.seed);
            emit(cfg.output.as_deref(), &report.render())?;
            if !report.passed() {
                for f in report.failures() {
                    eprintln!("decomposition {} failed (residual {:.3e})", f.name, f.max_residual);
                }
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::OverlapScan(common) => {
            let cfg = common.config()?;
            emit(cfg.output.as_deref(), &cmd_overlap_scan(&cfg)?.render()?)?;
        }
        Command::GateCounts(common) => {
            let cfg = common.config()?;
            emit(cfg.output.as_deref(), &cmd_gate_counts(&cfg)?.render()?)?;
        }
        Command::Emulate(common) => {
            let cfg = common.config()?;
            let result = run_emulation(&cfg)?;
            for e in &result.report.entries {
                match e.loss_step {
                    Some(s) => log::info!("{}: signal lost at Trotter step {s}", e.native.label()),
                    None => log::info!("{}: signal survives all {} steps", e.native.label(), cfg.steps),
                }
            }
            emit(cfg.output.as_deref(), &emulation_table(&cfg, &result).render()?)?;
        }
        Command::ExactCorrelator { common, spectral_out } => {
            let cfg = common.config()?;
            let out = cmd_exact_correlator(&cfg)?;
            emit(cfg.output.as_deref(), &out.correlator.render()?)?;
            if let Some(g) = out.spectral {
                match spectral_path(spectral_out, cfg.output.as_deref()) {
                    Some(p) => emit(Some(&p), &g.render()?)?,
                    None => emit(None, &format!("\n{}", g.render()?))?,
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
