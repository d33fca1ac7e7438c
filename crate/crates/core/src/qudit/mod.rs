//! Dense simulation substrate for heterogeneous qudit registers.
//!
//! Basis ordering is mixed-radix with site 0 the most significant digit.

mod channel;
mod density;
mod kernel;
mod measure;
mod register;
pub(crate) mod state;

pub use channel::Channel;
pub use density::DensityMatrix;
pub use measure::{sample_measurements, MeasurementRecord};
pub use register::{dim_cap, Register};
pub use state::StateVector;

use crate::error::Result;
use crate::linalg::CMatrix;

/// Operations shared by pure and mixed states.
pub trait QuantumState: Clone {
    fn register(&self) -> &Register;

    /// Apply a unitary on an ordered list of sites; rejects non-unitary input.
    fn apply_unitary(&mut self, u: &CMatrix, sites: &[usize]) -> Result<()>;

    /// `⟨O⟩` for a Hermitian observable acting on `sites`.
    fn expectation(&self, observable: &CMatrix, sites: &[usize]) -> Result<f64>;

    /// Computational-basis outcome probabilities, indexed by flat position.
    fn probabilities(&self) -> Vec<f64>;
}
