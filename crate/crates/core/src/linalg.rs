//! Small dense complex linear-algebra helpers on top of `nalgebra`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn dagger(m: &CMatrix) -> CMatrix {
    m.adjoint()
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Kronecker product of a list of matrices, left factor most significant.
pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a CMatrix>) -> CMatrix {
    factors
        .into_iter()
        .fold(identity(1), |acc, f| acc.kronecker(f))
}

pub fn from_real(m: &DMatrix<f64>) -> CMatrix {
    m.map(|x| C64::new(x, 0.0))
}

pub fn diag(entries: &[C64]) -> CMatrix {
    CMatrix::from_diagonal(&CVector::from_column_slice(entries))
}

pub fn real_diag(entries: &[f64]) -> CMatrix {
    CMatrix::from_fn(entries.len(), entries.len(), |i, j| {
        if i == j {
            C64::new(entries[i], 0.0)
        } else {
            ZERO
        }
    })
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch in max_abs_diff");
    a.iter()
        .zip(b.iter())
        .fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

/// max |U†U − I|.
pub fn unitarity_deviation(m: &CMatrix) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    max_abs_diff(&(m.adjoint() * m), &identity(m.nrows()))
}

/// max |M − M†|.
pub fn hermiticity_deviation(m: &CMatrix) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    max_abs_diff(m, &m.adjoint())
}

pub fn check_unitary(m: &CMatrix, tol: f64) -> Result<()> {
    let deviation = unitarity_deviation(m);
    if deviation > tol {
        return Err(Error::NotUnitary { deviation });
    }
    Ok(())
}

pub fn check_hermitian(m: &CMatrix, tol: f64) -> Result<()> {
    let deviation = hermiticity_deviation(m);
    if deviation > tol {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

/// Best global phase `e^{iφ}` aligning `b` onto `a`, and the residual
/// `max |a − e^{iφ} b|` at that phase.
pub fn phase_aligned_residual(a: &CMatrix, b: &CMatrix) -> (f64, C64) {
    let overlap: C64 = b.iter().zip(a.iter()).map(|(y, x)| y.conj() * x).sum();
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        ONE
    };
    let residual = a
        .iter()
        .zip(b.iter())
        .fold(0.0_f64, |acc, (x, y)| acc.max((x - phase * y).norm()));
    (residual, phase)
}

/// `e^{iθH}` for Hermitian `H` via its eigendecomposition.
pub fn expm_i_hermitian(h: &CMatrix, theta: f64) -> CMatrix {
    let eig = SymmetricEigen::new(h.clone());
    let phases = eig.eigenvalues.map(|lambda| C64::from_polar(1.0, theta * lambda));
    let v = &eig.eigenvectors;
    v * CMatrix::from_diagonal(&phases) * v.adjoint()
}

/// Largest singular value.
pub fn operator_norm(m: &CMatrix) -> f64 {
    let svd = m.clone().svd(false, false);
    svd.singular_values.iter().cloned().fold(0.0, f64::max)
}

pub fn vector_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Complete a unit vector to a unitary whose first column is that vector
/// (Householder reflection, corrected so the first column is exact).
pub fn unitary_with_first_column(v: &[C64]) -> Result<CMatrix> {
    let n = v.len();
    let norm = vector_norm(v);
    if (norm - 1.0).abs() > crate::tolerance::CONSTRUCTION {
        return Err(Error::InvalidArgument(format!(
            "vector must be normalised (norm {norm})"
        )));
    }
    // Householder H = I - 2 w w† maps e0 to -phase·v; multiply by a diagonal
    // phase so the first column equals v.
    let phase = if v[0].norm() > 1e-15 {
        v[0] / v[0].norm()
    } else {
        ONE
    };
    let target = CVector::from_fn(n, |i, _| v[i] / phase);
    let mut w = -target.clone();
    w[0] += ONE;
    let wn = w.norm();
    let mut u = if wn < 1e-14 {
        identity(n)
    } else {
        let w = w / C64::new(wn, 0.0);
        identity(n) - (&w * w.adjoint()) * C64::new(2.0, 0.0)
    };
    // H e0 = target exactly (up to rounding); fix the phase column-wise.
    u *= phase;
    Ok(u)
}
