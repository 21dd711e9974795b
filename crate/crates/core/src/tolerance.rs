//! Numerical tolerances shared across the crate.
//!
//! All values are absolute on unit-normalized operators.

/// Hermiticity tolerance for `hermitian_eig` inputs.
pub const HERMITIAN: f64 = 1e-9;
/// Orthonormality tolerance for eigenvector and projection families.
pub const ORTHONORMAL: f64 = 1e-9;
/// `P = P* = P²` tolerance and commutation threshold.
pub const PROJECTION: f64 = 1e-9;
/// Reconstruction tolerance for spectral and canonical decompositions.
pub const RECONSTRUCTION: f64 = 1e-8;
/// Trace-norm normalization tolerance for `certify_exact`.
pub const NORMALIZATION: f64 = 1e-8;
/// Relative cutoff below which singular values are treated as exact zeros.
pub const SINGULAR_CUTOFF: f64 = 1e-14;
/// Moduli within this relative distance are ordered by value rather than modulus.
pub const MODULUS_TIE: f64 = 1e-12;
