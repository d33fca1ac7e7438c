use crate::error::{Error, Result};
use crate::gates::{subspace_pauli, Axis, PauliMode};
use crate::linalg::{self, CMatrix};
use crate::tolerance;

use super::operators::{build_uplus, check_nmax};

/// Link raising/lowering operators and their split into two unitaries.
#[derive(Clone, Debug)]
pub struct SourceSink {
    pub uplus: CMatrix,
    pub uminus: CMatrix,
    /// Two unitaries whose average is `U⁺`.
    pub split: [CMatrix; 2],
    /// Whether both split parts are Hermitian. `U⁺` is not normal, so an
    /// average of two Hermitian matrices can never reproduce it.
    pub split_hermitian: bool,
}

impl SourceSink {
    /// Unitary parts averaging to `U⁻ = (U⁺)†`.
    pub fn split_minus(&self) -> [CMatrix; 2] {
        [linalg::dagger(&self.split[0]), linalg::dagger(&self.split[1])]
    }
}

fn embedded(axis: Axis, a: usize, b: usize) -> CMatrix {
    subspace_pauli(axis, a, b, 3, PauliMode::Embedded).expect("valid spin-1 pair")
}

/// Spin-1 split parts as matrix products: `X₁₂X₀₁` and `X₁₂Z₀₁X₀₁`.
pub fn spin1_split() -> [CMatrix; 2] {
    let x01 = embedded(Axis::X, 0, 1);
    let x12 = embedded(Axis::X, 1, 2);
    let z01 = embedded(Axis::Z, 0, 1);
    [&x12 * &x01, &x12 * &z01 * &x01]
}

/// The split with the products in the opposite order, `X₀₁X₁₂` and `X₀₁Z₀₁X₁₂`.
/// Its average is `U⁻`, not `U⁺`.
pub fn spin1_split_reversed() -> [CMatrix; 2] {
    let x01 = embedded(Axis::X, 0, 1);
    let x12 = embedded(Axis::X, 1, 2);
    let z01 = embedded(Axis::Z, 0, 1);
    [&x01 * &x12, &x01 * &z01 * &x12]
}

fn average(parts: &[CMatrix; 2]) -> CMatrix {
    (&parts[0] + &parts[1]) * linalg::c(0.5, 0.0)
}

/// `U⁺ = P(I + Z₀)/2` with `P|j⟩ = |j−1 mod d⟩` and `Z₀` flipping level 0.
fn cyclic_split(d: usize) -> [CMatrix; 2] {
    let mut p = CMatrix::zeros(d, d);
    for j in 0..d {
        p[((j + d - 1) % d, j)] = linalg::ONE;
    }
    let mut z0 = linalg::identity(d);
    z0[(0, 0)] = -linalg::ONE;
    let pz = &p * z0;
    [p, pz]
}

pub fn source_sink(n_max: usize) -> Result<SourceSink> {
    let d = check_nmax(n_max)?;
    let uplus = build_uplus(n_max)?;
    let split = if n_max == 1 {
        let reference = spin1_split_reversed();
        if linalg::max_abs_diff(&average(&reference), &uplus) < tolerance::CONSTRUCTION {
            reference
        } else {
            log::debug!("reversed-order split averages to U⁻; using the reordered products");
            spin1_split()
        }
    } else {
        cyclic_split(d)
    };
    let dev = linalg::max_abs_diff(&average(&split), &uplus);
    if dev > tolerance::CONSTRUCTION {
        return Err(Error::Verification {
            name: "source/sink split".into(),
            residual: dev,
        });
    }
    for part in &split {
        linalg::check_unitary(part, tolerance::CONSTRUCTION)?;
    }
    let split_hermitian = split
        .iter()
        .all(|m| linalg::hermiticity_deviation(m) < tolerance::CONSTRUCTION);
    Ok(SourceSink {
        uminus: linalg::dagger(&uplus),
        uplus,
        split,
        split_hermitian,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin_one_action() {
        let ss = source_sink(1).unwrap();
        let up = &ss.uplus;
        assert_eq!(up[(0, 1)], linalg::ONE);
        assert_eq!(up[(1, 2)], linalg::ONE);
        assert_eq!(up.column(0).iter().map(|z| z.norm()).sum::<f64>(), 0.0);
        assert_eq!(ss.uminus, linalg::dagger(up));
    }

    #[test]
    fn split_averages_and_is_unitary() {
        for n in 1..5 {
            let ss = source_sink(n).unwrap();
            assert!(linalg::max_abs_diff(&average(&ss.split), &ss.uplus) < 1e-12);
            let minus = ss.split_minus();
            assert!(linalg::max_abs_diff(&average(&minus), &ss.uminus) < 1e-12);
            for m in &ss.split {
                assert!(linalg::unitarity_deviation(m) < 1e-12);
            }
            assert!(!ss.split_hermitian);
        }
    }

    #[test]
    fn reversed_products_give_the_lowering_operator() {
        let ss = source_sink(1).unwrap();
        let rev = average(&spin1_split_reversed());
        assert!(linalg::max_abs_diff(&rev, &ss.uminus) < 1e-15);
    }

    #[test]
    fn spin_one_split_is_the_cyclic_split() {
        let a = spin1_split();
        let b = cyclic_split(3);
        assert!(linalg::max_abs_diff(&a[0], &b[0]) < 1e-15);
        assert!(linalg::max_abs_diff(&a[1], &b[1]) < 1e-15);
    }
}
