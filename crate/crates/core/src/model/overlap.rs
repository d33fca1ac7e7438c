use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::qudit::dim_cap;

use super::correlator::gamma_state;
use super::ground::exact_ground_state;
use super::hamiltonian::build_hamiltonian;
use super::params::ModelParams;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OverlapRow {
    pub n_s: usize,
    pub coupling: f64,
    /// `|⟨Γ|Ω⟩|²`.
    pub overlap_gamma: f64,
    /// `|⟨1…1|Ω⟩|²`, all sites in the middle level.
    pub overlap_111: f64,
}

pub fn overlap_point(params: &ModelParams) -> Result<OverlapRow> {
    let h = build_hamiltonian(params)?;
    let omega = exact_ground_state(&h)?.state;
    let gamma = gamma_state(params)?;
    let middle: usize = (0..params.n_s).map(|s| params.n_max * params.local_dim().pow((params.n_s - 1 - s) as u32)).sum();
    Ok(OverlapRow {
        n_s: params.n_s,
        coupling: params.u,
        overlap_gamma: gamma.inner_product(&omega)?.norm_sqr(),
        overlap_111: omega.amplitudes()[middle].norm_sqr(),
    })
}

/// Overlaps over a `(n_s, coupling)` grid; sizes beyond the dimension cap are
/// dropped with a warning.
pub fn overlap_scan(base: &ModelParams, sizes: &[usize], couplings: &[f64]) -> Result<Vec<OverlapRow>> {
    let cap = dim_cap();
    let d = base.local_dim();
    let kept: Vec<usize> = sizes
        .iter()
        .copied()
        .filter(|&n| {
            let ok = d.checked_pow(n as u32).is_some_and(|dim| dim <= cap);
            if !ok {
                log::warn!("skipping n_s = {n}: dimension exceeds cap {cap}");
            }
            ok
        })
        .collect();
    let grid: Vec<ModelParams> = kept
        .iter()
        .flat_map(|&n_s| {
            couplings.iter().map(move |&u| ModelParams {
                n_s,
                u,
                ..base.clone()
            })
        })
        .collect();
    grid.par_iter().map(overlap_point).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_site_overlap_is_one() {
        let row = overlap_point(&ModelParams::spin_one(1, 3.0)).unwrap();
        assert!((row.overlap_gamma - 1.0).abs() < 1e-12);
    }

    #[test]
    fn scan_orders_rows() {
        let rows = overlap_scan(&ModelParams::default(), &[2, 3], &[2.0, 5.0]).unwrap();
        let keys: Vec<(usize, f64)> = rows.iter().map(|r| (r.n_s, r.coupling)).collect();
        assert_eq!(keys, vec![(2, 2.0), (2, 5.0), (3, 2.0), (3, 5.0)]);
        assert!(rows.iter().all(|r| r.overlap_gamma <= 1.0 + 1e-12 && r.overlap_111 <= 1.0 + 1e-12));
    }
}
