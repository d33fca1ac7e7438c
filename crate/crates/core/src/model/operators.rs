use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, C64};

pub(crate) fn check_nmax(n_max: usize) -> Result<usize> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    Ok(2 * n_max + 1)
}

/// Diagonal of `L^z`: `(n_max, …, −n_max)`.
pub fn lz_diagonal(n_max: usize) -> Result<Vec<f64>> {
    let d = check_nmax(n_max)?;
    Ok((0..d).map(|i| n_max as f64 - i as f64).collect())
}

/// `L^z = diag(n_max, …, −n_max)`.
pub fn build_lz(n_max: usize) -> Result<CMatrix> {
    Ok(linalg::real_diag(&lz_diagonal(n_max)?))
}

/// `(L^z)²`.
pub fn build_lz2(n_max: usize) -> Result<CMatrix> {
    let d: Vec<f64> = lz_diagonal(n_max)?.iter().map(|x| x * x).collect();
    Ok(linalg::real_diag(&d))
}

/// `U^x = ½(Σⱼ σ^x_{j,j+1} + c_bound·σ^x_{0,2n_max})` with annihilating Paulis.
pub fn build_ux(n_max: usize, c_bound: bool) -> Result<CMatrix> {
    let d = check_nmax(n_max)?;
    let half = C64::new(0.5, 0.0);
    let mut m = CMatrix::zeros(d, d);
    for j in 0..d - 1 {
        m[(j, j + 1)] = half;
        m[(j + 1, j)] = half;
    }
    if c_bound {
        m[(0, d - 1)] += half;
        m[(d - 1, 0)] += half;
    }
    Ok(m)
}

/// The link raising operator `U⁺|m⟩ = |m+1⟩`, annihilating the top level.
pub fn build_uplus(n_max: usize) -> Result<CMatrix> {
    let d = check_nmax(n_max)?;
    let mut m = CMatrix::zeros(d, d);
    for j in 0..d - 1 {
        m[(j, j + 1)] = linalg::ONE;
    }
    Ok(m)
}
