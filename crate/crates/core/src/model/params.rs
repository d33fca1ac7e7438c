use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qudit::Register;

/// Couplings and sizes of the truncated lattice model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelParams {
    pub n_max: usize,
    pub n_s: usize,
    /// Electric coupling, identified with `g²a²`.
    pub u: f64,
    pub x: f64,
    pub y: f64,
    /// Cyclic (`Z_n`) corner hop in `U^x`.
    pub c_bound: bool,
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams {
            n_max: 1,
            n_s: 4,
            u: 5.0,
            x: 2.0,
            y: 0.5,
            c_bound: false,
        }
    }
}

impl ModelParams {
    pub fn spin_one(n_s: usize, u: f64) -> Self {
        ModelParams {
            n_s,
            u,
            ..Self::default()
        }
    }

    pub fn local_dim(&self) -> usize {
        2 * self.n_max + 1
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_max == 0 || self.n_s == 0 {
            return Err(Error::InvalidArgument("n_max and n_s must be positive".into()));
        }
        if ![self.u, self.x, self.y].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidArgument("couplings must be finite".into()));
        }
        Ok(())
    }

    /// Register of the working sites.
    pub fn register(&self) -> Result<Register> {
        self.validate()?;
        Register::uniform(self.n_s, self.local_dim())
    }

    /// Per-site `(L^z)²` coefficient `(U + 2Y)/2`.
    pub fn lz2_coeff(&self) -> f64 {
        (self.u + 2.0 * self.y) / 2.0
    }
}
