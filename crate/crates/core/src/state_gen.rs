//! Seeded generation of model states, random density matrices and
//! trace-one estimates.
//!
//! Randomness comes from ChaCha20 (`rand_chacha`) seeded with a `u64`;
//! independent streams for parallel work are selected with
//! [`stream_rng`]. Gaussian variates use `rand_distr::StandardNormal`.
//! Outputs are bit-identical for identical arguments.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::bound::{one_minus_exp_neg, DecayModel};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, projection_from_vectors, ComplexMatrix, Projection, Spectrum};
use crate::norms::{schatten_norm, PExponent};
use crate::special::riemann_zeta;
use crate::summation::compensated_sum;

pub type StateRng = ChaCha20Rng;

pub fn seeded_rng(seed: u64) -> StateRng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Independent stream `stream` of the generator seeded with `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> StateRng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A unit-trace-norm state together with its spectral data.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratedState {
    pub matrix: ComplexMatrix,
    pub spectrum: Spectrum,
    /// Envelope dominating every eigenvalue, when the state comes from one.
    pub model: Option<DecayModel>,
    /// Mass of the infinite-dimensional model beyond the kept levels.
    pub truncation_remainder: f64,
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Matrix of i.i.d. standard complex Gaussians (`E|z|² = 1`), filled row-major.
pub fn ginibre<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let entries: Vec<Complex64> = (0..dim * dim).map(|_| complex_gaussian(rng)).collect();
    ComplexMatrix::from_fn(dim, |r, c| entries[r * dim + c])
}

/// Haar-random unitary: QR of a Ginibre matrix with the phases of `R`'s
/// diagonal moved into `Q`.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let g = ginibre(dim, rng).into_dmatrix();
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    let phases: Vec<Complex64> = (0..dim)
        .map(|i| {
            let d = r[(i, i)];
            if d.norm() > 0.0 {
                d / d.norm()
            } else {
                Complex64::new(1.0, 0.0)
            }
        })
        .collect();
    let u = DMatrix::from_fn(dim, dim, |row, col| q[(row, col)] * phases[col]);
    ComplexMatrix::from_dmatrix(u).expect("unitary from QR is finite")
}

/// Projection onto `rank` Haar-random orthonormal directions.
pub fn random_projection<R: Rng + ?Sized>(dim: usize, rank: usize, rng: &mut R) -> Projection {
    let u = random_unitary(dim, rng);
    let vectors: Vec<Vec<Complex64>> = (0..rank)
        .map(|c| (0..dim).map(|r| u.get(r, c)).collect())
        .collect();
    projection_from_vectors(dim, &vectors).expect("unitary columns are orthonormal")
}

/// Mutually orthogonal projections with the given ranks, built from disjoint
/// column blocks of one random unitary. Ranks may sum to less than `dim`.
pub fn random_orthogonal_family<R: Rng + ?Sized>(
    dim: usize,
    ranks: &[usize],
    rng: &mut R,
) -> Result<Vec<Projection>> {
    if ranks.iter().sum::<usize>() > dim {
        return Err(Error::InvalidArgument(format!(
            "ranks {ranks:?} exceed dimension {dim}"
        )));
    }
    let u = random_unitary(dim, rng);
    let mut start = 0;
    ranks
        .iter()
        .map(|&rank| {
            let vectors: Vec<Vec<Complex64>> = (start..start + rank)
                .map(|c| (0..dim).map(|r| u.get(r, c)).collect())
                .collect();
            start += rank;
            projection_from_vectors(dim, &vectors)
        })
        .collect()
}

fn hermitian_part(m: &ComplexMatrix) -> ComplexMatrix {
    (m + &m.adjoint()).scale_real(0.5)
}

/// State with the given (already normalized) eigenvalues, diagonal or
/// conjugated by a seeded Haar unitary.
fn state_from_eigenvalues(
    eigenvalues: &[f64],
    basis_seed: Option<u64>,
    model: Option<DecayModel>,
    truncation_remainder: f64,
) -> Result<GeneratedState> {
    let dim = eigenvalues.len();
    let values: Vec<Complex64> = eigenvalues
        .iter()
        .map(|&x| Complex64::new(x, 0.0))
        .collect();
    let spectrum = match basis_seed {
        Some(seed) => Spectrum::from_unitary(values, &random_unitary(dim, &mut seeded_rng(seed)))?,
        None => Spectrum::diagonal(values)?,
    };
    let matrix = match basis_seed {
        Some(_) => hermitian_part(&spectrum.to_matrix()),
        None => ComplexMatrix::from_real_diagonal(eigenvalues),
    };
    Ok(GeneratedState {
        matrix,
        spectrum,
        model,
        truncation_remainder,
    })
}

fn normalize(weights: &[f64]) -> Vec<f64> {
    let total = compensated_sum(weights.iter().copied());
    weights.iter().map(|w| w / total).collect()
}

fn require_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::InvalidArgument(
            "dimension must be at least 1".into(),
        ));
    }
    Ok(())
}

/// Gibbs state truncated to `dim` levels: eigenvalues proportional to
/// `e^{-beta n}`. The declared envelope `C e^{-beta n}` uses
/// `C = (1 - e^{-beta}) / (1 - e^{-beta dim})` so that it dominates the
/// renormalized eigenvalues.
pub fn gibbs_state(beta: f64, dim: usize, basis_seed: Option<u64>) -> Result<GeneratedState> {
    require_dim(dim)?;
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "beta must be positive, got {beta}"
        )));
    }
    let remainder = (-beta * dim as f64).exp();
    let weights: Vec<f64> = (0..dim).map(|n| (-beta * n as f64).exp()).collect();
    let eigenvalues = normalize(&weights);
    let c = one_minus_exp_neg(beta) / one_minus_exp_neg(beta * dim as f64);
    let model = DecayModel::exponential(c, beta)?;
    state_from_eigenvalues(&eigenvalues, basis_seed, Some(model), remainder)
}

/// Power-law state truncated to `dim` levels: eigenvalues
/// `C_dim (n+1)^{-alpha}` with `C_dim` the finite normalizer. The remainder
/// is `1 - sum_{n<dim} (n+1)^{-alpha} / zeta(alpha)`.
pub fn power_law_state(alpha: f64, dim: usize, basis_seed: Option<u64>) -> Result<GeneratedState> {
    require_dim(dim)?;
    if !(alpha > 1.0 && alpha.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "alpha must exceed 1, got {alpha}"
        )));
    }
    let weights: Vec<f64> = (0..dim).map(|n| ((n + 1) as f64).powf(-alpha)).collect();
    let partial = compensated_sum(weights.iter().rev().copied());
    let eigenvalues = normalize(&weights);
    let remainder = (1.0 - partial / riemann_zeta(alpha)).max(0.0);
    let model = DecayModel::power_law(1.0 / partial, alpha)?;
    state_from_eigenvalues(&eigenvalues, basis_seed, Some(model), remainder)
}

/// `G G* / tr(G G*)` for a seeded Ginibre `G`.
pub fn random_density_matrix(dim: usize, seed: u64) -> Result<GeneratedState> {
    require_dim(dim)?;
    random_density_matrix_from(dim, &mut seeded_rng(seed))
}

pub fn random_density_matrix_from<R: Rng + ?Sized>(
    dim: usize,
    rng: &mut R,
) -> Result<GeneratedState> {
    let g = ginibre(dim, rng);
    let gg = hermitian_part(&(&g * &g.adjoint()));
    let tr = compensated_sum(gg.diagonal().iter().map(|z| z.re));
    let matrix = gg.scale_real(1.0 / tr);
    let spectrum = hermitian_eig(&matrix)?;
    Ok(GeneratedState {
        matrix,
        spectrum,
        model: None,
        truncation_remainder: 0.0,
    })
}

fn random_matrix<R: Rng + ?Sized>(dim: usize, hermitian: bool, rng: &mut R) -> ComplexMatrix {
    let g = ginibre(dim, rng);
    if hermitian {
        hermitian_part(&g)
    } else {
        g
    }
}

fn unit_trace_norm(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let norm = schatten_norm(m, PExponent::ONE)?;
    if norm < 1e-12 {
        return Err(Error::DegenerateNorm(norm));
    }
    Ok(m.scale_real(1.0 / norm))
}

/// Seeded random matrix (Hermitian on request) scaled to `||A||_1 = 1`;
/// generally not positive.
pub fn random_trace_one_operator(dim: usize, seed: u64, hermitian: bool) -> Result<ComplexMatrix> {
    require_dim(dim)?;
    random_trace_one_operator_from(dim, hermitian, &mut seeded_rng(seed))
}

pub fn random_trace_one_operator_from<R: Rng + ?Sized>(
    dim: usize,
    hermitian: bool,
    rng: &mut R,
) -> Result<ComplexMatrix> {
    unit_trace_norm(&random_matrix(dim, hermitian, rng))
}

/// Normal operator `U diag(mu) U*` with complex eigenvalues, `sum |mu_n| = 1`.
pub fn random_normal_spectrum<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<Spectrum> {
    require_dim(dim)?;
    let raw: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
    let total = compensated_sum(raw.iter().map(|z| z.norm()));
    let eigenvalues: Vec<Complex64> = raw.iter().map(|z| z / total).collect();
    let u = random_unitary(dim, rng);
    Spectrum::from_unitary(eigenvalues, &u)
}

/// `(A0 + m E) / ||A0 + m E||_1` with `E` seeded noise of unit 2-norm.
pub fn perturb_renormalized(
    a0: &ComplexMatrix,
    magnitude: f64,
    seed: u64,
    hermitian: bool,
) -> Result<ComplexMatrix> {
    perturb_renormalized_with_norm(a0, magnitude, seed, hermitian, PExponent::TWO)
}

/// As [`perturb_renormalized`], with the noise normalized in `noise_norm`.
pub fn perturb_renormalized_with_norm(
    a0: &ComplexMatrix,
    magnitude: f64,
    seed: u64,
    hermitian: bool,
    noise_norm: PExponent,
) -> Result<ComplexMatrix> {
    perturb_renormalized_from(a0, magnitude, hermitian, noise_norm, &mut seeded_rng(seed))
}

pub fn perturb_renormalized_from<R: Rng + ?Sized>(
    a0: &ComplexMatrix,
    magnitude: f64,
    hermitian: bool,
    noise_norm: PExponent,
    rng: &mut R,
) -> Result<ComplexMatrix> {
    if !(magnitude > 0.0 && magnitude.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "perturbation magnitude must be positive, got {magnitude}"
        )));
    }
    let noise = random_matrix(a0.dim(), hermitian, rng);
    let noise = noise.scale_real(1.0 / schatten_norm(&noise, noise_norm)?);
    let mut shifted = a0 + &noise.scale_real(magnitude);
    if hermitian && a0.is_hermitian(1e-12) {
        shifted = hermitian_part(&shifted);
    }
    unit_trace_norm(&shifted)
}
