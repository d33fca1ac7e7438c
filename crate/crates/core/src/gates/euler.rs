use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, C64};
use crate::rng;
use crate::tolerance;

use super::fit::levenberg_marquardt;
use super::pauli::{rotation, Axis};

const MAX_RESTARTS: usize = 32;

const FACTORS: [(Axis, usize, usize); 8] = [
    (Axis::Z, 0, 1),
    (Axis::Y, 0, 1),
    (Axis::Z, 0, 1),
    (Axis::Y, 0, 2),
    (Axis::Z, 0, 1),
    (Axis::Y, 0, 1),
    (Axis::Z, 0, 1),
    (Axis::Z, 1, 2),
];

/// Eight Euler angles reconstructing a qutrit unitary up to global phase.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EulerFit {
    pub angles: [f64; 8],
    pub residual: f64,
    pub restarts: usize,
}

/// `e^{iα₁σ^z_{01}} e^{iα₂σ^y_{01}} e^{iα₃σ^z_{01}} e^{iα₄σ^y_{02}} e^{iα₅σ^z_{01}} e^{iα₆σ^y_{01}} e^{iα₇σ^z_{01}} e^{iα₈σ^z_{12}}`
pub fn euler_product(angles: &[f64]) -> CMatrix {
    FACTORS
        .iter()
        .zip(angles)
        .fold(linalg::identity(3), |acc, (&(axis, a, b), &t)| {
            acc * rotation(axis, a, b, t, 3).expect("fixed valid pair")
        })
}

fn residuals(target: &CMatrix, params: &[f64]) -> Vec<f64> {
    let phase = C64::from_polar(1.0, params[8]);
    let v = euler_product(&params[..8]);
    v.iter()
        .zip(target.iter())
        .flat_map(|(x, t)| {
            let d = x - phase * t;
            [d.re, d.im]
        })
        .collect()
}

/// Fit the Euler angles of a 3×3 unitary by multi-start Levenberg–Marquardt.
pub fn su3_euler_fit(target: &CMatrix, seed: u64) -> Result<EulerFit> {
    if target.nrows() != 3 || target.ncols() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: target.nrows(),
        });
    }
    linalg::check_unitary(target, tolerance::CONSTRUCTION)?;
    let mut best = f64::INFINITY;
    for restart in 0..MAX_RESTARTS {
        let start: Vec<f64> = if restart == 0 {
            vec![0.0; 9]
        } else {
            let mut r = rng::stream(seed, "euler", restart as u64);
            (0..9).map(|_| r.random_range(-PI..PI)).collect()
        };
        let out = levenberg_marquardt(|p| residuals(target, p), start, 400, 1e-13);
        let v = euler_product(&out.x[..8]);
        let (res, _) = linalg::phase_aligned_residual(target, &v);
        best = best.min(res);
        if res < tolerance::FIT {
            let mut angles = [0.0; 8];
            angles.copy_from_slice(&out.x[..8]);
            return Ok(EulerFit {
                angles,
                residual: res,
                restarts: restart,
            });
        }
    }
    Err(Error::FitFailed {
        residual: best,
        restarts: MAX_RESTARTS,
    })
}

/// Haar-random special unitary via QR of a complex Gaussian matrix.
pub fn haar_random_su3<R: Rng + ?Sized>(rng: &mut R) -> CMatrix {
    let g = CMatrix::from_fn(3, 3, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for k in 0..3 {
        let d = r[(k, k)];
        let ph = if d.norm() > 0.0 { d / d.norm() } else { linalg::ONE };
        let mut col = q.column_mut(k);
        col *= ph;
    }
    let det = q.determinant();
    let fix = C64::from_polar(1.0, -det.arg() / 3.0);
    q * fix
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_fits_with_zero_angles() {
        let fit = su3_euler_fit(&linalg::identity(3), 1).unwrap();
        assert!(fit.residual < 1e-10);
        assert!(fit.angles.iter().all(|a| a.abs() < 1e-10));
    }

    #[test]
    fn two_rotation_product_fits() {
        let vg = rotation(Axis::Y, 1, 2, -0.4, 3).unwrap() * rotation(Axis::Y, 0, 1, 1.9, 3).unwrap();
        let fit = su3_euler_fit(&vg, 2).unwrap();
        assert!(fit.residual < 1e-8);
        let (res, _) = linalg::phase_aligned_residual(&vg, &euler_product(&fit.angles));
        assert!(res < 1e-8);
    }

    #[test]
    fn haar_samples_are_special_unitary() {
        let mut r = rng::root(3);
        for _ in 0..10 {
            let u = haar_random_su3(&mut r);
            assert!(linalg::unitarity_deviation(&u) < 1e-12);
            assert!((u.determinant() - linalg::ONE).norm() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_unitary() {
        let m = linalg::identity(3) * C64::new(2.0, 0.0);
        assert!(su3_euler_fit(&m, 0).is_err());
    }
}
