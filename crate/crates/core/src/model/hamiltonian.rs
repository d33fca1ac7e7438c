use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::qudit::Register;
use crate::tolerance;

use super::operators::{build_lz, build_lz2, build_ux, lz_diagonal};
use super::params::ModelParams;

/// `H = (U+2Y)/2·Σ(L^z)² + Y·Σ L^z L^z − X·Σ U^x` on an open chain.
#[derive(Clone, Debug)]
pub struct HamiltonianTerms {
    pub params: ModelParams,
    pub lz2_coeff: f64,
    pub lzlz_coeff: f64,
    pub ux_coeff: f64,
    register: Register,
    diagonal: Vec<f64>,
}

/// One embedded local term: coefficient times operator on the listed sites.
#[derive(Clone, Debug)]
pub struct LocalTerm {
    pub sites: Vec<usize>,
    pub coeff: f64,
    pub operator: CMatrix,
}

pub fn build_hamiltonian(params: &ModelParams) -> Result<HamiltonianTerms> {
    let register = params.register()?;
    let lz = lz_diagonal(params.n_max)?;
    let strides = register.strides().to_vec();
    let d = params.local_dim();
    let n = register.total_dim();
    let lz2_coeff = params.lz2_coeff();
    let lzlz_coeff = params.y;
    let mut diagonal = vec![0.0; n];
    for (idx, slot) in diagonal.iter_mut().enumerate() {
        let digit = |s: usize| (idx / strides[s]) % d;
        let mut e = 0.0;
        for s in 0..params.n_s {
            let m = lz[digit(s)];
            e += lz2_coeff * m * m;
            if s + 1 < params.n_s {
                e += lzlz_coeff * m * lz[digit(s + 1)];
            }
        }
        *slot = e;
    }
    Ok(HamiltonianTerms {
        params: params.clone(),
        lz2_coeff,
        lzlz_coeff,
        ux_coeff: -params.x,
        register,
        diagonal,
    })
}

impl HamiltonianTerms {
    pub fn register(&self) -> &Register {
        &self.register
    }

    pub fn dim(&self) -> usize {
        self.register.total_dim()
    }

    /// Diagonal (electric) part of `H` in the computational basis.
    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn local_terms(&self) -> Result<Vec<LocalTerm>> {
        let n = self.params.n_max;
        let lz = build_lz(n)?;
        let mut terms = Vec::new();
        for s in 0..self.params.n_s {
            terms.push(LocalTerm {
                sites: vec![s],
                coeff: self.lz2_coeff,
                operator: build_lz2(n)?,
            });
        }
        for s in 0..self.params.n_s.saturating_sub(1) {
            terms.push(LocalTerm {
                sites: vec![s, s + 1],
                coeff: self.lzlz_coeff,
                operator: linalg::kron(&lz, &lz),
            });
        }
        for s in 0..self.params.n_s {
            terms.push(LocalTerm {
                sites: vec![s],
                coeff: self.ux_coeff,
                operator: build_ux(n, self.params.c_bound)?,
            });
        }
        Ok(terms)
    }

    /// Visit the off-diagonal hops `(from, to, amplitude)` of `H`.
    fn for_each_hop(&self, mut f: impl FnMut(usize, usize, f64)) {
        let d = self.params.local_dim();
        let strides = self.register.strides();
        let hop = self.ux_coeff / 2.0;
        for idx in 0..self.dim() {
            for &stride in strides {
                let level = (idx / stride) % d;
                if level + 1 < d {
                    f(idx, idx + stride, hop);
                    f(idx + stride, idx, hop);
                }
                if self.params.c_bound && level == 0 {
                    let far = idx + (d - 1) * stride;
                    f(idx, far, hop);
                    f(far, idx, hop);
                }
            }
        }
    }

    /// `out = H·v` without forming `H`.
    pub fn apply_real(&self, v: &[f64], out: &mut [f64]) {
        for ((o, x), e) in out.iter_mut().zip(v).zip(&self.diagonal) {
            *o = e * x;
        }
        self.for_each_hop(|from, to, amp| out[to] += amp * v[from]);
    }

    /// Dense real symmetric matrix; refused above the dense-build limit.
    pub fn dense_real(&self) -> Result<DMatrix<f64>> {
        let n = self.dim();
        if n > tolerance::DENSE_BUILD_MAX {
            return Err(Error::DimensionCap {
                total: n,
                cap: tolerance::DENSE_BUILD_MAX,
            });
        }
        let mut h = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&self.diagonal));
        self.for_each_hop(|from, to, amp| h[(to, from)] += amp);
        Ok(h)
    }

    pub fn dense(&self) -> Result<CMatrix> {
        Ok(linalg::from_real(&self.dense_real()?))
    }
}
