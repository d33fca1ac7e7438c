use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::DEFAULT_DIM_CAP;

/// Environment variable overriding the register dimension cap.
pub const DIM_CAP_ENV: &str = "QSQED_DIM_CAP";

/// The active dimension cap: `QSQED_DIM_CAP` if set and parseable, else 2¹⁶.
pub fn dim_cap() -> usize {
    std::env::var(DIM_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_DIM_CAP)
}

/// Per-site local dimensions of a register of qudits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Register {
    dims: Vec<usize>,
    strides: Vec<usize>,
    total: usize,
}

impl TryFrom<Vec<usize>> for Register {
    type Error = Error;
    fn try_from(dims: Vec<usize>) -> Result<Self> {
        Register::new(dims)
    }
}

impl From<Register> for Vec<usize> {
    fn from(r: Register) -> Self {
        r.dims
    }
}

impl Register {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        Self::with_cap(dims, dim_cap())
    }

    pub fn with_cap(dims: Vec<usize>, cap: usize) -> Result<Self> {
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidDimension(d));
        }
        let mut total: usize = 1;
        for &d in &dims {
            total = total
                .checked_mul(d)
                .ok_or(Error::DimensionCap { total: usize::MAX, cap })?;
        }
        if total > cap {
            return Err(Error::DimensionCap { total, cap });
        }
        let mut strides = vec![1; dims.len()];
        for i in (0..dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * dims[i + 1];
        }
        Ok(Self {
            dims,
            strides,
            total,
        })
    }

    /// `n` sites of equal dimension `d`.
    pub fn uniform(n: usize, d: usize) -> Result<Self> {
        Self::new(vec![d; n])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, site: usize) -> usize {
        self.dims[site]
    }

    pub fn num_sites(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.total
    }

    pub(crate) fn strides(&self) -> &[usize] {
        &self.strides
    }

    /// Flat mixed-radix position of per-site basis indices.
    pub fn flat_index(&self, indices: &[usize]) -> Result<usize> {
        if indices.len() != self.dims.len() {
            return Err(Error::DimensionMismatch {
                expected: self.dims.len(),
                found: indices.len(),
            });
        }
        let mut flat = 0;
        for (site, (&index, &dim)) in indices.iter().zip(&self.dims).enumerate() {
            if index >= dim {
                return Err(Error::IndexOutOfRange { site, index, dim });
            }
            flat += index * self.strides[site];
        }
        Ok(flat)
    }

    /// Per-site digits of a flat position.
    pub fn digits(&self, flat: usize) -> Vec<usize> {
        self.dims
            .iter()
            .zip(&self.strides)
            .map(|(&d, &s)| (flat / s) % d)
            .collect()
    }

    /// Validate a site list and return the product of its local dimensions.
    pub fn subsystem_dim(&self, sites: &[usize]) -> Result<usize> {
        let mut seen = vec![false; self.dims.len()];
        let mut dim = 1;
        for &s in sites {
            if s >= self.dims.len() {
                return Err(Error::SiteOutOfRange {
                    site: s,
                    num_sites: self.dims.len(),
                });
            }
            if seen[s] {
                return Err(Error::DuplicateSite(s));
            }
            seen[s] = true;
            dim *= self.dims[s];
        }
        Ok(dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_radix_positions() {
        let r = Register::new(vec![3, 3]).unwrap();
        assert_eq!(r.flat_index(&[1, 2]).unwrap(), 5);
        let r = Register::new(vec![2, 3]).unwrap();
        assert_eq!(r.flat_index(&[1, 0]).unwrap(), 3);
        assert_eq!(r.digits(3), vec![1, 0]);
    }

    #[test]
    fn rejects_bad_dims_and_cap() {
        assert!(matches!(
            Register::new(vec![3, 1]),
            Err(Error::InvalidDimension(1))
        ));
        assert!(matches!(
            Register::with_cap(vec![3; 4], 80),
            Err(Error::DimensionCap { total: 81, cap: 80 })
        ));
    }

    #[test]
    fn index_out_of_range_names_site() {
        let r = Register::new(vec![3, 2]).unwrap();
        match r.flat_index(&[0, 2]) {
            Err(Error::IndexOutOfRange { site, index, dim }) => {
                assert_eq!((site, index, dim), (1, 2, 2))
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
