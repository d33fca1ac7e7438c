use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64, ONE};

/// `C_sum|a,b⟩ = |a, a+b mod d⟩`; the adjoint subtracts instead.
pub fn csum(d: usize, adjoint: bool) -> Result<CMatrix> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let mut m = CMatrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            let out = if adjoint { (b + d - a) % d } else { (a + b) % d };
            m[(a * d + out, a * d + b)] = ONE;
        }
    }
    Ok(m)
}

/// The `d`-dimensional discrete Fourier transform.
pub fn generalized_hadamard(d: usize) -> Result<CMatrix> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let norm = 1.0 / (d as f64).sqrt();
    Ok(CMatrix::from_fn(d, d, |j, k| {
        C64::from_polar(norm, 2.0 * PI * (j * k) as f64 / d as f64)
    }))
}

/// Hadamard on the `(a, b)` pair, identity elsewhere.
pub fn subspace_hadamard(a: usize, b: usize, d: usize) -> Result<CMatrix> {
    if a >= b || b >= d {
        return Err(Error::InvalidLevelPair { a, b, d });
    }
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut m = CMatrix::identity(d, d);
    m[(a, a)] = h;
    m[(a, b)] = h;
    m[(b, a)] = h;
    m[(b, b)] = -h;
    Ok(m)
}

/// `u` applied when a `ctrl_dim`-level control (most significant) is in `level`.
pub fn controlled(u: &CMatrix, ctrl_dim: usize, level: usize) -> Result<CMatrix> {
    if level >= ctrl_dim {
        return Err(Error::IndexOutOfRange {
            site: 0,
            index: level,
            dim: ctrl_dim,
        });
    }
    let n = u.nrows();
    let mut m = CMatrix::identity(ctrl_dim * n, ctrl_dim * n);
    m.view_mut((level * n, level * n), (n, n)).copy_from(u);
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{self, max_abs_diff};

    #[test]
    fn csum_action_and_adjoint() {
        for d in 2..6 {
            let c = csum(d, false).unwrap();
            let cd = csum(d, true).unwrap();
            assert!(max_abs_diff(&(&c * &cd), &linalg::identity(d * d)) < 1e-15);
            assert!(max_abs_diff(&cd, &linalg::dagger(&c)) < 1e-15);
            let mut p = linalg::identity(d * d);
            for _ in 0..d {
                p = &c * p;
            }
            assert!(max_abs_diff(&p, &linalg::identity(d * d)) < 1e-15);
        }
        let c = csum(3, false).unwrap();
        // |2,2> -> |2,1>
        assert_eq!(c[(2 * 3 + 1, 2 * 3 + 2)], ONE);
    }

    #[test]
    fn dft_is_unitary() {
        for d in 2..7 {
            let h = generalized_hadamard(d).unwrap();
            assert!(linalg::unitarity_deviation(&h) < 1e-14);
        }
        assert!(generalized_hadamard(1).is_err());
    }

    #[test]
    fn controlled_block() {
        let x = subspace_hadamard(0, 1, 3).unwrap();
        let cx = controlled(&x, 3, 1).unwrap();
        assert_eq!(cx.nrows(), 9);
        assert!(max_abs_diff(&cx.view((3, 3), (3, 3)).into_owned(), &x) < 1e-15);
        assert!(max_abs_diff(&cx.view((0, 0), (3, 3)).into_owned(), &linalg::identity(3)) < 1e-15);
        assert!(controlled(&x, 3, 3).is_err());
    }
}
