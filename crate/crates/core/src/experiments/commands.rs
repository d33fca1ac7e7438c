use rayon::prelude::*;

use crate::circuits::gate_count_report;
use crate::error::Result;
use crate::model::{overlap_scan, spectral_function, CorrelatorOracle, CorrelatorSeries, InitialState};

use super::config::ExperimentConfig;
use super::table::{num, CsvTable};

/// `|⟨Γ|Ω⟩|²` and `|⟨111|Ω⟩|²` over the configured size and coupling grid.
pub fn cmd_overlap_scan(cfg: &ExperimentConfig) -> Result<CsvTable> {
    let rows = overlap_scan(&cfg.model, &cfg.overlap.sizes, &cfg.overlap.couplings)?;
    let mut table = CsvTable::new(&["n_s", "coupling", "overlap_gamma", "overlap_111"]);
    super::standard_metadata(&mut table, cfg, "overlap-scan", "none");
    for r in rows {
        table.push(vec![r.n_s.to_string(), num(r.coupling), num(r.overlap_gamma), num(r.overlap_111)]);
    }
    Ok(table)
}

/// Primitive gate counts per Hamiltonian term in the qubit and qutrit encodings.
pub fn cmd_gate_counts(cfg: &ExperimentConfig) -> Result<CsvTable> {
    let mut table = CsvTable::new(&["term", "qubit_1q", "qubit_2q", "qutrit_1q", "qutrit_2q"]);
    super::standard_metadata(&mut table, cfg, "gate-counts", "none");
    for r in gate_count_report(cfg.seed)? {
        table.push(vec![
            r.term,
            r.qubit_1q.to_string(),
            r.qubit_2q.to_string(),
            r.qutrit_1q.to_string(),
            r.qutrit_2q.to_string(),
        ]);
    }
    Ok(table)
}

pub struct ExactCorrelatorOutput {
    pub correlator: CsvTable,
    pub spectral: Option<CsvTable>,
}

/// Exact `𝒞(t)` at `t = k·dt` for `k = 0..=steps`, and `G(E, p)` when a
/// spectral grid is configured.
pub fn cmd_exact_correlator(cfg: &ExperimentConfig) -> Result<ExactCorrelatorOutput> {
    let oracle = CorrelatorOracle::new(&cfg.model, InitialState::Gamma)?;
    let times: Vec<f64> = (0..=cfg.steps).map(|k| k as f64 * cfg.dt).collect();
    let mut table = CsvTable::new(&["t", "re", "im"]);
    super::standard_metadata(&mut table, cfg, "exact-correlator", "none");
    table.meta("dt", num(cfg.dt));
    for &t in &times {
        let c = oracle.value(t, 0, 0)?;
        table.push(vec![num(t), num(c.re), num(c.im)]);
    }
    let spectral = match &cfg.spectral {
        None => None,
        Some(grid) => {
            let series = (0..cfg.model.n_s)
                .into_par_iter()
                .map(|x| {
                    let values = times.iter().map(|&t| oracle.value(t, x, 0)).collect::<Result<Vec<_>>>()?;
                    Ok(CorrelatorSeries { x: x as i64, dt: cfg.dt, values })
                })
                .collect::<Result<Vec<_>>>()?;
            let t_max = cfg.steps as f64 * cfg.dt;
            let mut g = CsvTable::new(&["E", "p", "re", "im"]);
            super::standard_metadata(&mut g, cfg, "exact-correlator/spectral", "none");
            g.meta("t_max", num(t_max));
            for &e in &grid.energies {
                for &p in &grid.momenta {
                    let v = spectral_function(&series, e, p, t_max)?;
                    g.push(vec![num(e), num(p), num(v.re), num(v.im)]);
                }
            }
            Some(g)
        }
    };
    Ok(ExactCorrelatorOutput { correlator: table, spectral })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::SpectralGrid;

    #[test]
    fn exact_grid_is_exact_multiples() {
        let mut cfg = ExperimentConfig::default();
        cfg.model.n_s = 2;
        cfg.dt = 0.1;
        cfg.steps = 7;
        let out = cmd_exact_correlator(&cfg).unwrap();
        let ts: Vec<&str> = out.correlator.rows.iter().map(|r| r[0].as_str()).collect();
        assert_eq!(ts[3], num(3.0 * 0.1));
        assert_eq!(ts.len(), 8);
        assert!(out.spectral.is_none());
    }

    #[test]
    fn spectral_table_shape() {
        let mut cfg = ExperimentConfig::default();
        cfg.model.n_s = 2;
        cfg.steps = 4;
        cfg.spectral = Some(SpectralGrid { energies: vec![0.0, 1.0, 2.0], momenta: vec![0.0, 1.5] });
        let out = cmd_exact_correlator(&cfg).unwrap();
        assert_eq!(out.spectral.unwrap().rows.len(), 6);
    }
}
