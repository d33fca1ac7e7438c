use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::qudit::StateVector;
use crate::{rng, tolerance};

use super::hamiltonian::HamiltonianTerms;
use super::params::ModelParams;

const DEGENERACY_GAP: f64 = 1e-8;

/// Lowest eigenpair of a Hamiltonian.
#[derive(Clone, Debug)]
pub struct GroundState {
    pub energy: f64,
    pub state: StateVector,
    /// The second-lowest eigenvalue lies within `1e-8` of the lowest.
    pub degenerate: bool,
}

fn to_state(h: &HamiltonianTerms, v: &[f64]) -> Result<StateVector> {
    let amps = v.iter().map(|&x| C64::new(x, 0.0)).collect();
    StateVector::from_unnormalized(h.register().clone(), amps)
}

/// Dense eigensolve up to the dense limit, Lanczos beyond it.
pub fn exact_ground_state(h: &HamiltonianTerms) -> Result<GroundState> {
    if h.dim() <= tolerance::DENSE_EIGEN_MAX {
        let eig = h.dense_real()?.symmetric_eigen();
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let k = order[0];
        let degenerate = order
            .get(1)
            .is_some_and(|&j| eig.eigenvalues[j] - eig.eigenvalues[k] < DEGENERACY_GAP);
        let v: Vec<f64> = eig.eigenvectors.column(k).iter().copied().collect();
        return Ok(GroundState {
            energy: eig.eigenvalues[k],
            state: to_state(h, &v)?,
            degenerate,
        });
    }
    let (energy, v, gap) = lanczos_lowest(|x, y| h.apply_real(x, y), h.dim(), 0)?;
    Ok(GroundState {
        energy,
        state: to_state(h, &v)?,
        degenerate: gap < DEGENERACY_GAP,
    })
}

fn normalize(v: &mut [f64]) -> f64 {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= n);
    n
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Restarted Lanczos with full reorthogonalisation for the lowest eigenpair of a
/// real symmetric operator. Returns `(energy, vector, gap to next Ritz value)`.
pub fn lanczos_lowest<F>(apply: F, n: usize, seed: u64) -> Result<(f64, Vec<f64>, f64)>
where
    F: Fn(&[f64], &mut [f64]),
{
    let krylov = n.min(120);
    let mut r = rng::stream(seed, "lanczos", 0);
    let mut start: Vec<f64> = (0..n).map(|_| 1.0 + 0.1 * r.random::<f64>()).collect();
    let mut w = vec![0.0; n];
    for _restart in 0..50 {
        normalize(&mut start);
        let mut basis: Vec<Vec<f64>> = vec![start.clone()];
        let mut alpha = Vec::new();
        let mut beta = Vec::new();
        for j in 0..krylov {
            apply(&basis[j], &mut w);
            let a = dot(&w, &basis[j]);
            alpha.push(a);
            for _ in 0..2 {
                for q in &basis {
                    let c = dot(&w, q);
                    w.iter_mut().zip(q).for_each(|(x, y)| *x -= c * y);
                }
            }
            let b = normalize(&mut w);
            if j + 1 == krylov || b < 1e-12 {
                break;
            }
            beta.push(b);
            basis.push(w.clone());
        }
        let m = alpha.len();
        let t = DMatrix::from_fn(m, m, |i, j| {
            if i == j {
                alpha[i]
            } else if i + 1 == j {
                beta[i]
            } else if j + 1 == i {
                beta[j]
            } else {
                0.0
            }
        });
        let eig = t.symmetric_eigen();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let k = order[0];
        let energy = eig.eigenvalues[k];
        let gap = order.get(1).map_or(f64::INFINITY, |&j| eig.eigenvalues[j] - energy);
        let coeffs: DVector<f64> = eig.eigenvectors.column(k).into_owned();
        let mut v = vec![0.0; n];
        for (c, q) in coeffs.iter().zip(&basis) {
            v.iter_mut().zip(q).for_each(|(x, y)| *x += c * y);
        }
        normalize(&mut v);
        apply(&v, &mut w);
        let resid = w
            .iter()
            .zip(&v)
            .map(|(hx, x)| (hx - energy * x).powi(2))
            .sum::<f64>()
            .sqrt();
        if resid < 1e-10 || m < krylov {
            return Ok((energy, v, gap));
        }
        start = v;
    }
    Err(Error::Numerical("Lanczos did not converge".into()))
}

/// Closed-form lowest eigenvector `(1, β, 1)/𝒩` of the one-site problem and
/// the two `R^y` angles that prepare it from `|0⟩`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OneSiteGroundState {
    pub coupling: f64,
    /// Middle amplitude before normalisation.
    pub b: f64,
    pub norm: f64,
    pub amplitudes: [f64; 3],
    pub rho1: f64,
    pub rho2: f64,
}

/// The closed form `(u + 1 − √((u − 1)² + 32))/4` quoted for the middle
/// amplitude. It does not solve the one-site eigenproblem; kept for comparison.
pub fn reference_b(u: f64) -> f64 {
    (u + 1.0 - ((u - 1.0).powi(2) + 32.0).sqrt()) / 4.0
}

/// Middle amplitude of the lowest eigenvector of
/// `½[[u+1, −2, 0], [−2, 0, −2], [0, −2, u+1]]`.
pub fn onesite_b(u: f64) -> f64 {
    (u + 1.0 + ((u + 1.0).powi(2) + 32.0).sqrt()) / 4.0
}

pub fn onesite_ground_state(params: &ModelParams) -> Result<OneSiteGroundState> {
    if params.n_max != 1 {
        return Err(Error::Unsupported("one-site closed form needs n_max = 1".into()));
    }
    if params.x != 2.0 || params.y != 0.5 {
        log::debug!("one-site closed form assumes X = 2, Y = 1/2");
    }
    let u = params.u;
    let b = onesite_b(u);
    let norm = (2.0 + b * b).sqrt();
    let rho1 = (1.0 / norm).acos();
    let rho2 = (-1.0 / (norm * norm - 1.0).sqrt()).asin();
    Ok(OneSiteGroundState {
        coupling: u,
        b,
        norm,
        amplitudes: [1.0 / norm, b / norm, 1.0 / norm],
        rho1,
        rho2,
    })
}

impl OneSiteGroundState {
    pub fn amplitudes_complex(&self) -> Vec<C64> {
        self.amplitudes.iter().map(|&a| C64::new(a, 0.0)).collect()
    }
}
