use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, C64, ONE};
use crate::qudit::state::apply_local;
use crate::qudit::Register;

use super::pauli::{rotation, Axis};
use super::standard::csum;

/// How the noise policy treats a gate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseClass {
    RzVirtual,
    OneQuditNoisy,
    TwoQudit,
}

/// One gate: a local unitary on explicit sites plus bookkeeping labels.
#[derive(Clone, Debug)]
pub struct GateOp {
    pub name: String,
    pub sites: Vec<usize>,
    pub angle: Option<f64>,
    pub noise: Option<NoiseClass>,
    pub matrix: CMatrix,
}

/// Serialisable view of a gate, without its matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateDescription {
    pub name: String,
    pub sites: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub angle: Option<f64>,
    pub noise: Option<NoiseClass>,
}

impl GateOp {
    pub fn rotation(axis: Axis, a: usize, b: usize, theta: f64, site: usize, d: usize) -> Result<Self> {
        let noise = match axis {
            Axis::Z => NoiseClass::RzVirtual,
            _ => NoiseClass::OneQuditNoisy,
        };
        Ok(GateOp {
            name: format!("r{}{}{}", axis.label(), a, b),
            sites: vec![site],
            angle: Some(theta),
            noise: Some(noise),
            matrix: rotation(axis, a, b, theta, d)?,
        })
    }

    pub fn csum(control: usize, target: usize, d: usize, adjoint: bool) -> Result<Self> {
        Ok(GateOp {
            name: if adjoint { "csum_dag" } else { "csum" }.to_string(),
            sites: vec![control, target],
            angle: None,
            noise: Some(NoiseClass::TwoQudit),
            matrix: csum(d, adjoint)?,
        })
    }

    pub fn labeled(
        name: impl Into<String>,
        sites: Vec<usize>,
        matrix: CMatrix,
        angle: Option<f64>,
        noise: NoiseClass,
    ) -> Self {
        GateOp {
            name: name.into(),
            sites,
            angle,
            noise: Some(noise),
            matrix,
        }
    }

    /// A gate without a noise class; noisy execution rejects it.
    pub fn unlabeled(name: impl Into<String>, sites: Vec<usize>, matrix: CMatrix) -> Self {
        GateOp {
            name: name.into(),
            sites,
            angle: None,
            noise: None,
            matrix,
        }
    }

    pub fn adjoint(&self) -> Self {
        let (name, angle) = match self.angle {
            Some(a) => (self.name.clone(), Some(-a)),
            None => match self.name.strip_suffix("_dag") {
                Some(base) => (base.to_string(), None),
                None => (format!("{}_dag", self.name), None),
            },
        };
        GateOp {
            name,
            sites: self.sites.clone(),
            angle,
            noise: self.noise,
            matrix: linalg::dagger(&self.matrix),
        }
    }

    pub fn description(&self) -> GateDescription {
        GateDescription {
            name: self.name.clone(),
            sites: self.sites.clone(),
            angle: self.angle,
            noise: self.noise,
        }
    }
}

/// A time-ordered list of gates with a tracked global phase.
///
/// The represented unitary is `global_phase · U_last ⋯ U_first`.
#[derive(Clone, Debug)]
pub struct GateSequence {
    pub ops: Vec<GateOp>,
    pub global_phase: C64,
}

impl Default for GateSequence {
    fn default() -> Self {
        GateSequence {
            ops: Vec::new(),
            global_phase: ONE,
        }
    }
}

impl GateSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, op: GateOp) {
        self.ops.push(op);
    }

    pub fn append(&mut self, other: GateSequence) {
        self.ops.extend(other.ops);
        self.global_phase *= other.global_phase;
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Move every gate from local site `i` to `map[i]`.
    pub fn relabel(mut self, map: &[usize]) -> Result<Self> {
        for op in &mut self.ops {
            for s in &mut op.sites {
                *s = *map.get(*s).ok_or(Error::SiteOutOfRange {
                    site: *s,
                    num_sites: map.len(),
                })?;
            }
        }
        Ok(self)
    }

    pub fn adjoint(&self) -> Self {
        GateSequence {
            ops: self.ops.iter().rev().map(GateOp::adjoint).collect(),
            global_phase: self.global_phase.conj(),
        }
    }

    pub fn count(&self, class: NoiseClass) -> usize {
        self.ops.iter().filter(|op| op.noise == Some(class)).count()
    }

    pub fn count_named(&self, name: &str) -> usize {
        self.ops.iter().filter(|op| op.name == name).count()
    }

    pub fn descriptions(&self) -> Vec<GateDescription> {
        self.ops.iter().map(GateOp::description).collect()
    }

    /// Dense unitary of the sequence on a register with local dimensions `dims`.
    pub fn matrix(&self, dims: &[usize]) -> Result<CMatrix> {
        let register = Register::with_cap(dims.to_vec(), usize::MAX)?;
        let n = register.total_dim();
        let mut out = CMatrix::identity(n, n);
        for j in 0..n {
            let col = out.column_mut(j);
            let mut amps: Vec<C64> = col.iter().copied().collect();
            for op in &self.ops {
                apply_local(&register, &mut amps, &op.matrix, &op.sites)?;
            }
            for (i, a) in amps.into_iter().enumerate() {
                out[(i, j)] = a * self.global_phase;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_is_time_ordered_product() {
        let mut seq = GateSequence::new();
        seq.push(GateOp::rotation(Axis::Y, 0, 1, 0.3, 0, 3).unwrap());
        seq.push(GateOp::rotation(Axis::X, 1, 2, 0.7, 0, 3).unwrap());
        let m = seq.matrix(&[3]).unwrap();
        let expect = rotation(Axis::X, 1, 2, 0.7, 3).unwrap() * rotation(Axis::Y, 0, 1, 0.3, 3).unwrap();
        assert!(linalg::max_abs_diff(&m, &expect) < 1e-14);
    }

    #[test]
    fn adjoint_inverts() {
        let mut seq = GateSequence::new();
        seq.push(GateOp::csum(0, 1, 3, false).unwrap());
        seq.push(GateOp::rotation(Axis::Y, 0, 2, 0.3, 1, 3).unwrap());
        seq.global_phase = C64::from_polar(1.0, 0.4);
        let mut both = seq.clone();
        both.append(seq.adjoint());
        let m = both.matrix(&[3, 3]).unwrap();
        assert!(linalg::max_abs_diff(&m, &linalg::identity(9)) < 1e-14);
        assert_eq!(seq.adjoint().ops[1].name, "csum_dag");
    }

    #[test]
    fn relabel_moves_sites() {
        let mut seq = GateSequence::new();
        seq.push(GateOp::csum(0, 1, 3, false).unwrap());
        let moved = seq.clone().relabel(&[4, 2]).unwrap();
        assert_eq!(moved.ops[0].sites, vec![4, 2]);
        assert!(seq.relabel(&[1]).is_err());
    }
}
