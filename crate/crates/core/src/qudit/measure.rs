use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qudit::QuantumState;
use crate::rng;

/// One distinct measurement outcome and how often it occurred.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasurementRecord {
    pub outcome: Vec<usize>,
    pub count: u64,
    pub seed: u64,
}

/// Draw `shots` computational-basis samples. Records are ordered by flat
/// basis position; identical state and seed give identical records.
pub fn sample_measurements<S: QuantumState>(
    state: &S,
    shots: u64,
    seed: u64,
) -> Result<Vec<MeasurementRecord>> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let probs = state.probabilities();
    let dist = WeightedIndex::new(&probs)
        .map_err(|e| Error::Numerical(format!("invalid outcome distribution: {e}")))?;
    let mut rng = rng::root(seed);
    let mut counts = vec![0u64; probs.len()];
    for _ in 0..shots {
        counts[dist.sample(&mut rng)] += 1;
    }
    let register = state.register();
    Ok(counts
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(flat, count)| MeasurementRecord {
            outcome: register.digits(flat),
            count,
            seed,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;
    use crate::qudit::{Register, StateVector};

    #[test]
    fn basis_state_single_outcome() {
        let r = Register::new(vec![3, 2]).unwrap();
        let s = StateVector::basis(r, &[2, 1]).unwrap();
        let recs = sample_measurements(&s, 137, 1).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].outcome, vec![2, 1]);
        assert_eq!(recs[0].count, 137);
    }

    #[test]
    fn zero_shots_rejected() {
        let r = Register::new(vec![2]).unwrap();
        let s = StateVector::basis(r, &[0]).unwrap();
        assert!(matches!(sample_measurements(&s, 0, 1), Err(Error::ZeroShots)));
    }

    #[test]
    fn plus_state_frequency_and_determinism() {
        let r = Register::new(vec![2]).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = StateVector::new(r, vec![c(h, 0.0), c(h, 0.0)]).unwrap();
        let shots = 10_000;
        let a = sample_measurements(&s, shots, 42).unwrap();
        let b = sample_measurements(&s, shots, 42).unwrap();
        assert_eq!(a, b);
        let total: u64 = a.iter().map(|r| r.count).sum();
        assert_eq!(total, shots);
        let zeros = a.iter().find(|r| r.outcome == [0]).map_or(0, |r| r.count);
        let freq = zeros as f64 / shots as f64;
        let sigma = (0.25 / shots as f64).sqrt();
        assert!((freq - 0.5).abs() < 5.0 * sigma);
    }
}
