use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64, I, ONE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn label(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }
}

/// Whether a subspace Pauli vanishes or acts as identity outside its pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PauliMode {
    Annihilating,
    Embedded,
}

fn check_pair(a: usize, b: usize, d: usize) -> Result<()> {
    if a >= b || b >= d {
        return Err(Error::InvalidLevelPair { a, b, d });
    }
    Ok(())
}

/// The generalised Pauli `σ^axis_{a,b}` on a `d`-level system.
///
/// `σ^y_{a,b}|a⟩ = −i|b⟩` and `σ^y_{a,b}|b⟩ = i|a⟩`.
pub fn subspace_pauli(axis: Axis, a: usize, b: usize, d: usize, mode: PauliMode) -> Result<CMatrix> {
    check_pair(a, b, d)?;
    let mut m = CMatrix::zeros(d, d);
    match axis {
        Axis::X => {
            m[(b, a)] = ONE;
            m[(a, b)] = ONE;
        }
        Axis::Y => {
            m[(b, a)] = -I;
            m[(a, b)] = I;
        }
        Axis::Z => {
            m[(a, a)] = ONE;
            m[(b, b)] = -ONE;
        }
    }
    if mode == PauliMode::Embedded {
        for c in (0..d).filter(|&c| c != a && c != b) {
            m[(c, c)] = ONE;
        }
    }
    Ok(m)
}

/// `R^axis_{a,b}(θ) = e^{iθσ^axis_{a,b}}`, identity outside the pair.
pub fn rotation(axis: Axis, a: usize, b: usize, theta: f64, d: usize) -> Result<CMatrix> {
    check_pair(a, b, d)?;
    if !theta.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite angle {theta}")));
    }
    let (s, c) = theta.sin_cos();
    let mut m = CMatrix::identity(d, d);
    match axis {
        Axis::X => {
            m[(a, a)] = C64::new(c, 0.0);
            m[(b, b)] = C64::new(c, 0.0);
            m[(a, b)] = C64::new(0.0, s);
            m[(b, a)] = C64::new(0.0, s);
        }
        Axis::Y => {
            m[(a, a)] = C64::new(c, 0.0);
            m[(b, b)] = C64::new(c, 0.0);
            m[(a, b)] = C64::new(-s, 0.0);
            m[(b, a)] = C64::new(s, 0.0);
        }
        Axis::Z => {
            m[(a, a)] = C64::new(c, s);
            m[(b, b)] = C64::new(c, -s);
        }
    }
    Ok(m)
}
