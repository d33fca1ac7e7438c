use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::tolerance::CONSTRUCTION;

/// A CPTP map in Kraus form acting on one or more sites.
#[derive(Clone, Debug, PartialEq)]
pub struct Channel {
    kraus: Vec<CMatrix>,
    local_dims: Vec<usize>,
}

impl Channel {
    /// Checks `Σ Kᵢ†Kᵢ = I` within the construction tolerance.
    pub fn new(kraus: Vec<CMatrix>, local_dims: Vec<usize>) -> Result<Self> {
        let dim: usize = local_dims.iter().product();
        if kraus.is_empty() {
            return Err(Error::IncompleteChannel {
                deviation: f64::INFINITY,
            });
        }
        let mut sum = CMatrix::zeros(dim, dim);
        for k in &kraus {
            if k.nrows() != dim || k.ncols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: k.nrows(),
                });
            }
            sum += k.adjoint() * k;
        }
        let deviation = linalg::max_abs_diff(&sum, &linalg::identity(dim));
        if deviation > CONSTRUCTION {
            return Err(Error::IncompleteChannel { deviation });
        }
        Ok(Self { kraus, local_dims })
    }

    pub fn identity(local_dims: Vec<usize>) -> Self {
        let dim = local_dims.iter().product();
        Self {
            kraus: vec![linalg::identity(dim)],
            local_dims,
        }
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }

    pub fn arity(&self) -> usize {
        self.local_dims.len()
    }

    pub fn local_dims(&self) -> &[usize] {
        &self.local_dims
    }

    pub fn local_dim(&self) -> usize {
        self.local_dims.iter().product()
    }

    /// `max |Σ K†K − I|`.
    pub fn completeness_deviation(&self) -> f64 {
        let dim = self.local_dim();
        let sum = self
            .kraus
            .iter()
            .fold(CMatrix::zeros(dim, dim), |acc, k| acc + k.adjoint() * k);
        linalg::max_abs_diff(&sum, &linalg::identity(dim))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn incomplete_kraus_set_is_rejected() {
        let half = linalg::identity(3) * linalg::c(0.5, 0.0);
        assert!(matches!(
            Channel::new(vec![half], vec![3]),
            Err(Error::IncompleteChannel { .. })
        ));
    }
}
