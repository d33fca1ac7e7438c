use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, C64, ONE, ZERO};
use crate::qudit::kernel::{Layout, SparseOp};
use crate::qudit::{QuantumState, Register};
use crate::tolerance::{CONSTRUCTION, CONSERVATION};

/// A normalised pure state.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    register: Register,
    amps: Vec<C64>,
}

impl StateVector {
    pub fn new(register: Register, amps: Vec<C64>) -> Result<Self> {
        if amps.len() != register.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: register.total_dim(),
                found: amps.len(),
            });
        }
        let norm = linalg::vector_norm(&amps);
        if (norm - 1.0).abs() > CONSTRUCTION {
            return Err(Error::InvalidArgument(format!(
                "state is not normalised (norm {norm})"
            )));
        }
        Ok(Self { register, amps })
    }

    /// Normalises `amps`; rejects the zero vector.
    pub fn from_unnormalized(register: Register, mut amps: Vec<C64>) -> Result<Self> {
        let norm = linalg::vector_norm(&amps);
        if norm == 0.0 {
            return Err(Error::InvalidArgument("zero vector".into()));
        }
        for a in &mut amps {
            *a /= norm;
        }
        Self::new(register, amps)
    }

    /// Computational basis state `|indices⟩`.
    pub fn basis(register: Register, indices: &[usize]) -> Result<Self> {
        let flat = register.flat_index(indices)?;
        let mut amps = vec![ZERO; register.total_dim()];
        amps[flat] = ONE;
        Ok(Self { register, amps })
    }

    /// Tensor product of single-site states, site 0 first.
    pub fn product(register: Register, locals: &[Vec<C64>]) -> Result<Self> {
        if locals.len() != register.num_sites() {
            return Err(Error::DimensionMismatch {
                expected: register.num_sites(),
                found: locals.len(),
            });
        }
        let mut amps = vec![ONE];
        for (site, local) in locals.iter().enumerate() {
            if local.len() != register.dim(site) {
                return Err(Error::DimensionMismatch {
                    expected: register.dim(site),
                    found: local.len(),
                });
            }
            amps = amps
                .iter()
                .flat_map(|a| local.iter().map(move |b| a * b))
                .collect();
        }
        Self::new(register, amps)
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        linalg::vector_norm(&self.amps)
    }

    /// `⟨self|other⟩`.
    pub fn inner_product(&self, other: &StateVector) -> Result<C64> {
        if self.register != other.register {
            return Err(Error::RegisterMismatch);
        }
        Ok(linalg::inner(&self.amps, &other.amps))
    }

    /// Apply an arbitrary (possibly non-unitary) local operator, without
    /// renormalising. Returns the raw amplitude vector.
    pub fn apply_operator(&self, op: &CMatrix, sites: &[usize]) -> Result<Vec<C64>> {
        let mut amps = self.amps.clone();
        apply_local(&self.register, &mut amps, op, sites)?;
        Ok(amps)
    }

    /// Apply a full-register unitary given as a dense matrix.
    pub fn apply_full(&mut self, u: &CMatrix) -> Result<()> {
        let all: Vec<usize> = (0..self.register.num_sites()).collect();
        self.apply_unitary(u, &all)
    }
}

/// Apply `op` on `sites` of a raw amplitude vector of `register`.
pub(crate) fn apply_local(
    register: &Register,
    amps: &mut [C64],
    op: &CMatrix,
    sites: &[usize],
) -> Result<()> {
    let local = register.subsystem_dim(sites)?;
    if op.nrows() != local || op.ncols() != local {
        return Err(Error::DimensionMismatch {
            expected: local,
            found: op.nrows(),
        });
    }
    let layout = Layout::new(register, sites);
    SparseOp::new(op).apply(amps, &layout, 1, 0);
    Ok(())
}

impl QuantumState for StateVector {
    fn register(&self) -> &Register {
        &self.register
    }

    fn apply_unitary(&mut self, u: &CMatrix, sites: &[usize]) -> Result<()> {
        linalg::check_unitary(u, CONSTRUCTION)?;
        apply_local(&self.register, &mut self.amps, u, sites)?;
        debug_assert!((self.norm() - 1.0).abs() < 1e3 * CONSERVATION);
        Ok(())
    }

    fn expectation(&self, observable: &CMatrix, sites: &[usize]) -> Result<f64> {
        linalg::check_hermitian(observable, CONSTRUCTION)?;
        let applied = self.apply_operator(observable, sites)?;
        let value = linalg::inner(&self.amps, &applied);
        if value.im.abs() > CONSTRUCTION {
            return Err(Error::Numerical(format!(
                "expectation has imaginary residue {}",
                value.im
            )));
        }
        Ok(value.re)
    }

    fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }
}
