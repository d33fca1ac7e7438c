//! Experiment drivers behind the command-line subcommands. Every table is
//! CSV with `#` metadata lines and is fully determined by config and seed.

mod commands;
mod config;
mod emulate;
mod table;
mod verify;

pub use commands::{cmd_exact_correlator, cmd_gate_counts, cmd_overlap_scan, ExactCorrelatorOutput};
pub use config::{ExperimentConfig, NoiseMode, OverlapGrid, SignalLossConfig, SpectralGrid, CONFIG_SCHEMA_VERSION};
pub use emulate::{
    emulation_table, run_emulation, signal_loss, EmulationResult, NativeSeries, SeriesPoint, SignalLossEntry,
    SignalLossReport,
};
pub use table::{num, CsvTable};
pub use verify::{
    cmd_verify_decompositions, default_checks, run_checks, DecompositionCheck, VerificationEntry, VerificationReport,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn standard_metadata(table: &mut CsvTable, cfg: &ExperimentConfig, command: &str, noise_mode: &str) {
    table.meta("qsqed_version", VERSION);
    table.meta("command", command);
    table.meta("config_sha256", cfg.hash());
    table.meta("seed", cfg.seed);
    table.meta("noise_mode", noise_mode);
}
