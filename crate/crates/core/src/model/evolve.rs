use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};
use crate::qudit::{QuantumState, StateVector};

use super::hamiltonian::HamiltonianTerms;

/// Eigendecomposition of a real symmetric Hamiltonian.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub values: DVector<f64>,
    pub vectors: DMatrix<f64>,
}

impl Spectrum {
    pub fn new(h: &HamiltonianTerms) -> Result<Self> {
        Self::from_matrix(h.dense_real()?)
    }

    pub fn from_matrix(h: DMatrix<f64>) -> Result<Self> {
        if h.nrows() != h.ncols() {
            return Err(Error::DimensionMismatch {
                expected: h.nrows(),
                found: h.ncols(),
            });
        }
        let eig = h.symmetric_eigen();
        if eig.eigenvalues.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numerical("eigensolve produced non-finite values".into()));
        }
        Ok(Spectrum {
            values: eig.eigenvalues,
            vectors: eig.eigenvectors,
        })
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// `e^{−iHt}|ψ⟩` on raw amplitudes.
    pub fn evolve_amplitudes(&self, t: f64, amps: &[C64]) -> Vec<C64> {
        let v = &self.vectors;
        let n = self.dim();
        let mut coeffs = vec![C64::new(0.0, 0.0); n];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let col = v.column(k);
            let proj: C64 = col.iter().zip(amps).map(|(a, b)| b * *a).sum();
            *c = proj * C64::from_polar(1.0, -self.values[k] * t);
        }
        let mut out = vec![C64::new(0.0, 0.0); n];
        for (k, c) in coeffs.iter().enumerate() {
            for (o, a) in out.iter_mut().zip(v.column(k).iter()) {
                *o += c * *a;
            }
        }
        out
    }

    pub fn evolve(&self, t: f64, state: &StateVector) -> Result<StateVector> {
        if state.register().total_dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: state.register().total_dim(),
            });
        }
        StateVector::new(
            state.register().clone(),
            self.evolve_amplitudes(t, state.amplitudes()),
        )
    }

    /// Dense `e^{−iHt}`.
    pub fn propagator(&self, t: f64) -> CMatrix {
        let v = crate::linalg::from_real(&self.vectors);
        let phases = self.values.map(|e| C64::from_polar(1.0, -e * t));
        &v * CMatrix::from_diagonal(&phases) * v.adjoint()
    }
}

/// `e^{−iHt}|ψ⟩` through the spectral decomposition of `H`.
pub fn exact_evolve(h: &HamiltonianTerms, t: f64, state: &StateVector) -> Result<StateVector> {
    Spectrum::new(h)?.evolve(t, state)
}
