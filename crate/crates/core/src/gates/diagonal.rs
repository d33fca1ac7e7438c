use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::C64;

use super::pauli::Axis;
use super::sequence::{GateOp, GateSequence};

/// `diag(target) = α₀·I + Σⱼ αⱼ σ^z_{j,j+1}` with annihilating `σ^z`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagonalDecomposition {
    pub alpha0: f64,
    /// `alphas[j]` multiplies `σ^z_{j,j+1}`.
    pub alphas: Vec<f64>,
}

impl DiagonalDecomposition {
    pub fn reconstruct(&self) -> Vec<f64> {
        let d = self.alphas.len() + 1;
        (0..d)
            .map(|k| {
                let mut v = self.alpha0;
                if k < d - 1 {
                    v += self.alphas[k];
                }
                if k > 0 {
                    v -= self.alphas[k - 1];
                }
                v
            })
            .collect()
    }
}

/// Solve for the coefficients by Gaussian elimination on the `d×d` system.
pub fn solve_diagonal_coeffs(target: &[f64]) -> Result<DiagonalDecomposition> {
    let d = target.len();
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    if target.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidArgument("non-finite diagonal entry".into()));
    }
    let a = DMatrix::from_fn(d, d, |row, col| {
        if col == 0 || row + 1 == col {
            1.0
        } else if row == col {
            -1.0
        } else {
            0.0
        }
    });
    let b = DVector::from_column_slice(target);
    let x = a
        .lu()
        .solve(&b)
        .ok_or_else(|| Error::Numerical("diagonal coefficient system is singular".into()))?;
    Ok(DiagonalDecomposition {
        alpha0: x[0],
        alphas: x.iter().skip(1).copied().collect(),
    })
}

/// `e^{iθ·diag(target)}` as commuting `R^z_{j,j+1}` gates on site 0 and a global phase.
pub fn decompose_diagonal_rotation(theta: f64, target: &[f64]) -> Result<GateSequence> {
    let coeffs = solve_diagonal_coeffs(target)?;
    let d = target.len();
    let mut seq = GateSequence::new();
    for (j, alpha) in coeffs.alphas.iter().enumerate() {
        let angle = theta * alpha;
        if angle != 0.0 {
            seq.push(GateOp::rotation(Axis::Z, j, j + 1, angle, 0, d)?);
        }
    }
    seq.global_phase = C64::from_polar(1.0, theta * coeffs.alpha0);
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{self, C64};
    use proptest::prelude::*;

    #[test]
    fn lz_squared_coefficients() {
        let dec = solve_diagonal_coeffs(&[1.0, 0.0, 1.0]).unwrap();
        assert!((dec.alpha0 - 2.0 / 3.0).abs() < 1e-14);
        assert!((dec.alphas[0] - 1.0 / 3.0).abs() < 1e-14);
        assert!((dec.alphas[1] + 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(solve_diagonal_coeffs(&[1.0]).is_err());
        assert!(solve_diagonal_coeffs(&[1.0, f64::NAN]).is_err());
    }

    proptest! {
        #[test]
        fn reconstructs_any_diagonal(v in prop::collection::vec(-5.0f64..5.0, 2..9)) {
            let dec = solve_diagonal_coeffs(&v).unwrap();
            for (x, y) in dec.reconstruct().iter().zip(&v) {
                prop_assert!((x - y).abs() < 1e-10);
            }
        }

        #[test]
        fn rotation_sequence_matches_exponential(
            v in prop::collection::vec(-3.0f64..3.0, 2..7),
            theta in -2.0f64..2.0,
        ) {
            let seq = decompose_diagonal_rotation(theta, &v).unwrap();
            let m = seq.matrix(&[v.len()]).unwrap();
            let phases: Vec<C64> = v.iter().map(|x| C64::from_polar(1.0, theta * x)).collect();
            prop_assert!(linalg::max_abs_diff(&m, &linalg::diag(&phases)) < 1e-10);
        }
    }
}
