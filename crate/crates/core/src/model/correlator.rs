use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, C64};
use crate::qudit::{Register, StateVector};

use super::evolve::Spectrum;
use super::ground::{exact_ground_state, onesite_ground_state};
use super::hamiltonian::build_hamiltonian;
use super::params::ModelParams;
use super::source_sink::{source_sink, SourceSink};

/// Which state the correlator is evaluated in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InitialState {
    /// Product of one-site ground states.
    Gamma,
    /// Exact ground state of the chain.
    Omega,
}

/// Product of one-site ground states on every site.
pub fn gamma_state(params: &ModelParams) -> Result<StateVector> {
    let local = onesite_ground_state(params)?.amplitudes_complex();
    StateVector::product(params.register()?, &vec![local; params.n_s])
}

/// Exact oracle for `𝒞(x−y, t) = ⟨ψ|e^{iHt} U⁻_x e^{−iHt} U⁺_y|ψ⟩` (sites 0-based).
#[derive(Clone, Debug)]
pub struct CorrelatorOracle {
    pub params: ModelParams,
    pub spectrum: Spectrum,
    pub initial: StateVector,
    pub source_sink: SourceSink,
}

impl CorrelatorOracle {
    pub fn new(params: &ModelParams, initial: InitialState) -> Result<Self> {
        let h = build_hamiltonian(params)?;
        let spectrum = Spectrum::new(&h)?;
        let initial = match initial {
            InitialState::Gamma => gamma_state(params)?,
            InitialState::Omega => exact_ground_state(&h)?.state,
        };
        Ok(CorrelatorOracle {
            params: params.clone(),
            spectrum,
            initial,
            source_sink: source_sink(params.n_max)?,
        })
    }

    pub fn register(&self) -> Result<Register> {
        self.params.register()
    }

    pub fn value(&self, t: f64, x: usize, y: usize) -> Result<C64> {
        let n_s = self.params.n_s;
        for s in [x, y] {
            if s >= n_s {
                return Err(Error::SiteOutOfRange { site: s, num_sites: n_s });
            }
        }
        let up = &self.source_sink.uplus;
        let raised = self.initial.apply_operator(up, &[y])?;
        let right = self.spectrum.evolve_amplitudes(t, &raised);
        let evolved = self.spectrum.evolve_amplitudes(t, self.initial.amplitudes());
        let reg = self.register()?;
        let mut left = evolved;
        crate::qudit::state::apply_local(&reg, &mut left, up, &[x])?;
        Ok(linalg::inner(&left, &right))
    }
}

pub fn exact_correlator(
    params: &ModelParams,
    t: f64,
    initial: InitialState,
    x: usize,
    y: usize,
) -> Result<C64> {
    CorrelatorOracle::new(params, initial)?.value(t, x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CMatrix;
    use crate::model::onesite_b;

    #[test]
    fn zero_time_one_site_value() {
        let p = ModelParams::spin_one(4, 5.0);
        let c = exact_correlator(&p, 0.0, InitialState::Gamma, 0, 0).unwrap();
        let b = onesite_b(5.0);
        let expect = (1.0 + b * b) / (2.0 + b * b);
        assert!((c.re - expect).abs() < 1e-12);
        assert!(c.im.abs() < 1e-12);
    }

    #[test]
    fn bounded_by_one() {
        let oracle = CorrelatorOracle::new(&ModelParams::spin_one(3, 5.0), InitialState::Omega).unwrap();
        for k in 0..20 {
            let c = oracle.value(0.3 * k as f64, 0, 1).unwrap();
            assert!(c.norm() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn two_site_matches_dense_evaluation() {
        let p = ModelParams::spin_one(2, 5.0);
        let oracle = CorrelatorOracle::new(&p, InitialState::Gamma).unwrap();
        let h = build_hamiltonian(&p).unwrap().dense().unwrap();
        let t = 0.77;
        let u = linalg::expm_i_hermitian(&h, -t);
        let udag = linalg::dagger(&u);
        let up = source_sink(1).unwrap().uplus;
        let um = linalg::dagger(&up);
        let id = linalg::identity(3);
        let op: CMatrix = &udag * linalg::kron(&id, &um) * &u * linalg::kron(&up, &id);
        let psi = nalgebra::DVector::from_column_slice(oracle.initial.amplitudes());
        let expect = (psi.adjoint() * op * &psi)[(0, 0)];
        let got = oracle.value(t, 1, 0).unwrap();
        assert!((got - expect).norm() < 1e-12);
    }

    #[test]
    fn sites_checked() {
        assert!(exact_correlator(&ModelParams::spin_one(2, 5.0), 0.0, InitialState::Gamma, 2, 0).is_err());
    }
}
