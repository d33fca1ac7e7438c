use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, C64};

use super::operators::{build_lz, build_lz2, build_ux};

/// Spin-1 operators as two-qubit Pauli strings, first qubit most significant.
#[derive(Clone, Debug)]
pub struct QubitEncoding {
    pub lz: CMatrix,
    pub lz2: CMatrix,
    /// `X₁(1 + X₂ + Z₂)/4 + Y₁Y₂/4`.
    pub ux: CMatrix,
    /// Qubit basis index of each qutrit level.
    pub embedding: [usize; 3],
    /// The 4×3 isometry realising `embedding`.
    pub isometry: CMatrix,
}

pub fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[linalg::ZERO, linalg::ONE, linalg::ONE, linalg::ZERO])
}

pub fn pauli_y() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[linalg::ZERO, -linalg::I, linalg::I, linalg::ZERO])
}

pub fn pauli_z() -> CMatrix {
    linalg::real_diag(&[1.0, -1.0])
}

/// Qubit indices `|00⟩, |10⟩, |01⟩` for levels `m = +1, 0, −1`.
pub const EMBEDDING: [usize; 3] = [0b00, 0b10, 0b01];

pub fn embedding_isometry() -> CMatrix {
    let mut v = CMatrix::zeros(4, 3);
    for (level, &q) in EMBEDDING.iter().enumerate() {
        v[(q, level)] = linalg::ONE;
    }
    v
}

pub fn qubit_encoding(n_max: usize) -> Result<QubitEncoding> {
    if n_max != 1 {
        return Err(Error::Unsupported("the two-qubit encoding covers n_max = 1 only".into()));
    }
    let (x, y, z, id) = (pauli_x(), pauli_y(), pauli_z(), linalg::identity(2));
    let half = C64::new(0.5, 0.0);
    let lz = (linalg::kron(&id, &z) + linalg::kron(&z, &z)) * half;
    let lz2 = (linalg::identity(4) + linalg::kron(&z, &id)) * half;
    let ux = (linalg::kron(&x, &(&id + &x + &z)) + linalg::kron(&y, &y)) * C64::new(0.25, 0.0);
    Ok(QubitEncoding {
        lz,
        lz2,
        ux,
        embedding: EMBEDDING,
        isometry: embedding_isometry(),
    })
}

impl QubitEncoding {
    /// `V† A V` for a two-qubit operator `A`.
    pub fn restrict(&self, op: &CMatrix) -> CMatrix {
        self.isometry.adjoint() * op * &self.isometry
    }

    /// Largest restriction error of the three encoded operators.
    pub fn restriction_error(&self) -> Result<f64> {
        let pairs = [
            (&self.lz, build_lz(1)?),
            (&self.lz2, build_lz2(1)?),
            (&self.ux, build_ux(1, false)?),
        ];
        Ok(pairs
            .iter()
            .map(|(q, t)| linalg::max_abs_diff(&self.restrict(q), t))
            .fold(0.0, f64::max))
    }
}
