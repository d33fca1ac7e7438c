//! The numerical tolerance ladder shared by constructors, simulators and tests.

/// Construction checks: unitarity, Hermiticity, channel completeness.
pub const CONSTRUCTION: f64 = 1e-10;

/// Conservation checks: norm and trace preservation.
pub const CONSERVATION: f64 = 1e-12;

/// Equivalence of a decomposed gate sequence with its target exponential.
pub const DECOMPOSITION: f64 = 1e-9;

/// Smallest admissible density-matrix eigenvalue.
pub const POSITIVITY: f64 = -1e-10;

/// Residual accepted from numerical angle fits.
pub const FIT: f64 = 1e-8;

/// Default cap on the total register dimension.
pub const DEFAULT_DIM_CAP: usize = 1 << 16;

/// Largest dimension for which dense Hamiltonians are diagonalised directly.
pub const DENSE_EIGEN_MAX: usize = 1024;

/// Largest dimension for which a dense Hamiltonian matrix is built at all.
pub const DENSE_BUILD_MAX: usize = 4096;
