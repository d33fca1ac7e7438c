use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::C64;

/// Correlator samples `C(x, k·dt)` for `k = 0, 1, …` at one separation `x`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelatorSeries {
    pub x: i64,
    pub dt: f64,
    pub values: Vec<C64>,
}

/// `G(E, p) ≈ Σₓ ∫₀^{t_max} dt C(x,t) e^{−iEt + ipx}` by the trapezoidal rule.
pub fn spectral_function(series: &[CorrelatorSeries], e: f64, p: f64, t_max: f64) -> Result<C64> {
    if series.is_empty() || series.iter().any(|s| s.values.is_empty()) {
        return Err(Error::InvalidArgument("empty correlator series".into()));
    }
    let mut total = C64::new(0.0, 0.0);
    for s in series {
        if s.dt <= 0.0 {
            return Err(Error::InvalidArgument("time step must be positive".into()));
        }
        let steps = (t_max / s.dt).round() as usize;
        if (steps as f64 * s.dt - t_max).abs() > 1e-9 * t_max.max(1.0) || steps >= s.values.len() {
            return Err(Error::InvalidArgument(format!(
                "t_max = {t_max} is not a grid point of the series at x = {}",
                s.x
            )));
        }
        let mut acc = C64::new(0.0, 0.0);
        for (k, c) in s.values.iter().take(steps + 1).enumerate() {
            let w = if k == 0 || k == steps { 0.5 } else { 1.0 };
            let t = k as f64 * s.dt;
            acc += c * C64::from_polar(w, -e * t);
        }
        total += acc * s.dt * C64::from_polar(1.0, p * s.x as f64);
    }
    Ok(total)
}
