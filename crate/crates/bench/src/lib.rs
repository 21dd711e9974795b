//! Seeded inputs shared by the benchmarks.

use schatten_core::state_gen::{ginibre, seeded_rng};
use schatten_core::ComplexMatrix;

pub const DIMS: [usize; 4] = [4, 16, 32, 64];

pub fn complex_matrix(dim: usize) -> ComplexMatrix {
    ginibre(dim, &mut seeded_rng(dim as u64))
}

pub fn hermitian_matrix(dim: usize) -> ComplexMatrix {
    let g = complex_matrix(dim);
    (&g + &g.adjoint()).scale_real(0.5)
}
