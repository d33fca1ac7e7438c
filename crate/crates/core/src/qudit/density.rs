use nalgebra::SymmetricEigen;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, C64};
use crate::qudit::kernel::{Layout, SparseOp};
use crate::qudit::{Channel, QuantumState, Register, StateVector};
use crate::tolerance::{CONSERVATION, CONSTRUCTION};

/// A mixed state on a register.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    register: Register,
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Wraps `matrix`, checking Hermiticity, unit trace and positivity.
    pub fn new(register: Register, matrix: CMatrix) -> Result<Self> {
        let n = register.total_dim();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: matrix.nrows(),
            });
        }
        linalg::check_hermitian(&matrix, CONSTRUCTION)?;
        let rho = Self { register, matrix };
        let tr = rho.trace();
        if (tr.re - 1.0).abs() > CONSTRUCTION || tr.im.abs() > CONSTRUCTION {
            return Err(Error::InvalidArgument(format!("trace {tr} is not 1")));
        }
        let min = rho.min_eigenvalue();
        if min < crate::tolerance::POSITIVITY {
            return Err(Error::InvalidArgument(format!(
                "density matrix has negative eigenvalue {min:.3e}"
            )));
        }
        Ok(rho)
    }

    pub fn from_pure(state: &StateVector) -> Self {
        let v = state.amplitudes();
        let n = v.len();
        let matrix = CMatrix::from_fn(n, n, |i, j| v[i] * v[j].conj());
        Self {
            register: state.register().clone(),
            matrix,
        }
    }

    pub fn basis(register: Register, indices: &[usize]) -> Result<Self> {
        Ok(Self::from_pure(&StateVector::basis(register, indices)?))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let eig = SymmetricEigen::new(self.matrix.clone());
        eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// `max |ρ − ρ†|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        linalg::hermiticity_deviation(&self.matrix)
    }

    /// `ρ → Σᵢ Kᵢ ρ Kᵢ†` on `sites`.
    pub fn apply_channel(&mut self, channel: &Channel, sites: &[usize]) -> Result<()> {
        let local = self.register.subsystem_dim(sites)?;
        if local != channel.local_dim() {
            return Err(Error::DimensionMismatch {
                expected: local,
                found: channel.local_dim(),
            });
        }
        let layout = Layout::new(&self.register, sites);
        let n = self.register.total_dim();
        let mut out = CMatrix::zeros(n, n);
        for k in channel.kraus() {
            if let Some(w) = scaled_identity_weight(k) {
                out += &self.matrix * C64::new(w, 0.0);
                continue;
            }
            let op = SparseOp::new(k);
            let mut term = self.matrix.clone();
            conjugate_with(&mut term, &op, &layout, n);
            out += term;
        }
        self.matrix = out;
        Ok(())
    }

    /// Diagonal probability of each flat basis position.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.matrix.nrows())
            .map(|i| self.matrix[(i, i)].re)
            .collect()
    }

    /// `tr(ρ O_full)` with `O` acting on `sites`, without Hermiticity checks.
    pub(crate) fn trace_with(&self, op: &CMatrix, sites: &[usize]) -> Result<C64> {
        let local = self.register.subsystem_dim(sites)?;
        if op.nrows() != local {
            return Err(Error::DimensionMismatch {
                expected: local,
                found: op.nrows(),
            });
        }
        // tr(O ρ): apply O to the columns of ρ and sum the diagonal.
        let layout = Layout::new(&self.register, sites);
        let sparse = SparseOp::new(op);
        let n = self.register.total_dim();
        let mut m = self.matrix.clone();
        let data = m.as_mut_slice();
        for col in 0..n {
            sparse.apply(data, &layout, 1, col * n);
        }
        Ok((0..n).map(|i| m[(i, i)]).sum())
    }
}

/// `|c|²` when `k = c·I`.
fn scaled_identity_weight(k: &CMatrix) -> Option<f64> {
    let c = k[(0, 0)];
    let n = k.nrows();
    for j in 0..n {
        for i in 0..n {
            let expect = if i == j { c } else { C64::new(0.0, 0.0) };
            if k[(i, j)] != expect {
                return None;
            }
        }
    }
    Some(c.norm_sqr())
}

fn conjugate_with(matrix: &mut CMatrix, op: &SparseOp, layout: &Layout, n: usize) {
    // Column-major storage: column c is contiguous.
    let data = matrix.as_mut_slice();
    for col in 0..n {
        op.apply(data, layout, 1, col * n);
    }
    // Right multiplication by K† acts on each row with conj(K).
    let conj = op.conj();
    for row in 0..n {
        conj.apply(data, layout, n, row);
    }
}

pub(crate) fn conjugate_local(
    register: &Register,
    matrix: &mut CMatrix,
    k: &CMatrix,
    sites: &[usize],
) -> Result<()> {
    let local = register.subsystem_dim(sites)?;
    if k.nrows() != local || k.ncols() != local {
        return Err(Error::DimensionMismatch {
            expected: local,
            found: k.nrows(),
        });
    }
    let layout = Layout::new(register, sites);
    conjugate_with(matrix, &SparseOp::new(k), &layout, register.total_dim());
    Ok(())
}

impl QuantumState for DensityMatrix {
    fn register(&self) -> &Register {
        &self.register
    }

    fn apply_unitary(&mut self, u: &CMatrix, sites: &[usize]) -> Result<()> {
        linalg::check_unitary(u, CONSTRUCTION)?;
        conjugate_local(&self.register, &mut self.matrix, u, sites)?;
        debug_assert!((self.trace().re - 1.0).abs() < 1e3 * CONSERVATION);
        Ok(())
    }

    fn expectation(&self, observable: &CMatrix, sites: &[usize]) -> Result<f64> {
        linalg::check_hermitian(observable, CONSTRUCTION)?;
        let value = self.trace_with(observable, sites)?;
        if value.im.abs() > CONSTRUCTION {
            return Err(Error::Numerical(format!(
                "expectation has imaginary residue {}",
                value.im
            )));
        }
        Ok(value.re)
    }

    fn probabilities(&self) -> Vec<f64> {
        self.diagonal().into_iter().map(|p| p.max(0.0)).collect()
    }
}
