//! Gather/scatter application of a small operator on a site subset.

use crate::linalg::{CMatrix, C64, ZERO};
use crate::qudit::Register;

/// Flat offsets of the local basis states and of the complement configurations.
#[derive(Debug, Clone)]
pub(crate) struct Layout {
    pub offsets: Vec<usize>,
    pub bases: Vec<usize>,
}

impl Layout {
    pub fn new(register: &Register, sites: &[usize]) -> Self {
        let strides = register.strides();
        let dims = register.dims();
        let mut offsets = vec![0usize];
        for &s in sites {
            let mut next = Vec::with_capacity(offsets.len() * dims[s]);
            for &o in &offsets {
                for k in 0..dims[s] {
                    next.push(o + k * strides[s]);
                }
            }
            offsets = next;
        }
        let complement: Vec<usize> = (0..dims.len()).filter(|s| !sites.contains(s)).collect();
        let mut bases = vec![0usize];
        for &s in &complement {
            let mut next = Vec::with_capacity(bases.len() * dims[s]);
            for &b in &bases {
                for k in 0..dims[s] {
                    next.push(b + k * strides[s]);
                }
            }
            bases = next;
        }
        Self { offsets, bases }
    }
}

/// Row-wise nonzero entries of a small dense operator.
#[derive(Debug, Clone)]
pub(crate) struct SparseOp {
    rows: Vec<Vec<(usize, C64)>>,
}

impl SparseOp {
    pub fn new(m: &CMatrix) -> Self {
        let rows = (0..m.nrows())
            .map(|i| {
                (0..m.ncols())
                    .filter_map(|j| {
                        let z = m[(i, j)];
                        (z != ZERO).then_some((j, z))
                    })
                    .collect()
            })
            .collect();
        Self { rows }
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|&(j, z)| (j, z.conj())).collect())
                .collect(),
        }
    }

    /// Apply on the virtual vector `data[shift + scale * (base + offset)]`
    /// for every complement base.
    pub fn apply(&self, data: &mut [C64], layout: &Layout, scale: usize, shift: usize) {
        let k = layout.offsets.len();
        let mut buf = vec![ZERO; k];
        for &base in &layout.bases {
            for (slot, &o) in buf.iter_mut().zip(&layout.offsets) {
                *slot = data[shift + scale * (base + o)];
            }
            for (i, row) in self.rows.iter().enumerate() {
                let mut acc = ZERO;
                for &(j, z) in row {
                    acc += z * buf[j];
                }
                data[shift + scale * (base + layout.offsets[i])] = acc;
            }
        }
    }
}
