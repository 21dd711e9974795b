//! Dense complex linear algebra: the matrix type, spectral and canonical
//! decompositions, the operator modulus and orthogonal projections.
//!
//! Eigen- and singular-value decompositions are delegated to `nalgebra`;
//! everything returned from this module is re-sorted and validated against the
//! invariants documented on each type.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::linalg::{SymmetricEigen, SVD};
use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense square complex matrix with finite entries and `dim >= 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix(DMatrix<Complex64>);

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        Self(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        Self(DMatrix::identity(dim, dim))
    }

    /// Builds a matrix from a closure over `(row, col)`.
    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        Self(DMatrix::from_fn(dim, dim, f))
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &z) in diag.iter().enumerate() {
            m.0[(i, i)] = z;
        }
        m
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let diag: Vec<Complex64> = diag.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_diagonal(&diag)
    }

    /// Builds a matrix from rows, checking that it is square, non-empty and finite.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidArgument(
                "matrix must have at least one row".into(),
            ));
        }
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
        }
        Self::from_dmatrix(DMatrix::from_fn(dim, dim, |r, c| rows[r][c]))
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    /// Builds a matrix from row-major real and imaginary parts.
    pub fn from_parts(dim: usize, re: &[f64], im: &[f64]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument(
                "matrix dimension must be at least 1".into(),
            ));
        }
        for part in [re, im] {
            if part.len() != dim * dim {
                return Err(Error::DimensionMismatch {
                    expected: dim * dim,
                    found: part.len(),
                });
            }
        }
        Self::from_dmatrix(DMatrix::from_fn(dim, dim, |r, c| {
            Complex64::new(re[r * dim + c], im[r * dim + c])
        }))
    }

    /// Wraps an `nalgebra` matrix after validating shape and finiteness.
    pub fn from_dmatrix(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() == 0 || m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                found: m.ncols(),
            });
        }
        for c in 0..m.ncols() {
            for r in 0..m.nrows() {
                let z = m[(r, c)];
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(Error::NonFinite { row: r, col: c });
                }
            }
        }
        Ok(Self(m))
    }

    pub fn as_dmatrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_dmatrix(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.0[(row, col)] = value;
    }

    /// Entries in row-major order.
    pub fn row_major(&self) -> Vec<Complex64> {
        let d = self.dim();
        (0..d * d).map(|k| self.0[(k / d, k % d)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim()).map(|i| self.0[(i, i)]).collect()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self(self.0.map(|z| z * factor))
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        Self(self.0.map(|z| z * factor))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Frobenius norm of `M - M*`, an upper bound on its operator norm.
    pub fn hermitian_deviation(&self) -> f64 {
        (self - &self.adjoint()).frobenius_norm()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol * self.frobenius_norm().max(1.0)
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    /// `self * other`, checking dimensions.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(self * other)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(self - other)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix(-&self.0)
    }
}

impl Add for ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(self.0 + rhs.0)
    }
}

impl Sub for ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(self.0 - rhs.0)
    }
}

impl Mul for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(self.0 * rhs.0)
    }
}

/// Permutation that orders values by descending modulus. Values whose moduli
/// agree to [`tolerance::MODULUS_TIE`] are ordered by descending real part,
/// then descending imaginary part.
fn descending_modulus_order(values: &[Complex64]) -> Vec<usize> {
    let n = values.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| values[b].norm().total_cmp(&values[a].norm()));
    let scale = values
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut start = 0;
    while start < n {
        let lead = values[idx[start]].norm();
        let mut end = start + 1;
        while end < n && lead - values[idx[end]].norm() <= tolerance::MODULUS_TIE * scale {
            end += 1;
        }
        idx[start..end].sort_by(|&a, &b| {
            values[b]
                .re
                .total_cmp(&values[a].re)
                .then(values[b].im.total_cmp(&values[a].im))
        });
        start = end;
    }
    idx
}

fn select_columns(m: &DMatrix<Complex64>, order: &[usize]) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.nrows(), order.len(), |r, c| m[(r, order[c])])
}

/// Largest deviation of `V* V` from the identity.
fn orthonormality_defect(vectors: &DMatrix<Complex64>) -> f64 {
    let gram = vectors.adjoint() * vectors;
    let k = gram.nrows();
    let mut worst: f64 = 0.0;
    for r in 0..k {
        for c in 0..k {
            let target = if r == c { ONE } else { ZERO };
            worst = worst.max((gram[(r, c)] - target).norm());
        }
    }
    worst
}

/// Eigenvalues and orthonormal eigenvectors of a normal operator, sorted by
/// descending modulus.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    dim: usize,
    eigenvalues: Vec<Complex64>,
    /// `dim x len` matrix whose columns are the eigenvectors.
    vectors: DMatrix<Complex64>,
}

impl Spectrum {
    /// Spectrum of the zero operator in `dim` dimensions.
    pub fn empty(dim: usize) -> Self {
        Self {
            dim,
            eigenvalues: Vec::new(),
            vectors: DMatrix::zeros(dim, 0),
        }
    }

    /// Builds a spectrum from explicitly supplied eigen-data. This is how
    /// normal, non-Hermitian operators enter the library.
    pub fn from_parts(
        dim: usize,
        eigenvalues: Vec<Complex64>,
        eigenvectors: Vec<Vec<Complex64>>,
    ) -> Result<Self> {
        if eigenvalues.len() != eigenvectors.len() {
            return Err(Error::DimensionMismatch {
                expected: eigenvalues.len(),
                found: eigenvectors.len(),
            });
        }
        if let Some(bad) = eigenvectors.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        let vectors = DMatrix::from_fn(dim, eigenvectors.len(), |r, c| eigenvectors[c][r]);
        Self::from_columns(dim, eigenvalues, vectors)
    }

    /// Builds the spectrum `U diag(eigenvalues) U*` from a unitary whose
    /// columns are the eigenvectors.
    pub fn from_unitary(eigenvalues: Vec<Complex64>, unitary: &ComplexMatrix) -> Result<Self> {
        let dim = unitary.dim();
        if eigenvalues.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: eigenvalues.len(),
            });
        }
        Self::from_columns(dim, eigenvalues, unitary.0.clone())
    }

    /// Spectrum of `diag(eigenvalues)` in the standard basis.
    pub fn diagonal(eigenvalues: Vec<Complex64>) -> Result<Self> {
        if eigenvalues
            .iter()
            .any(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::InvalidArgument("eigenvalues must be finite".into()));
        }
        let dim = eigenvalues.len();
        Ok(Self::sorted(dim, eigenvalues, DMatrix::identity(dim, dim)))
    }

    fn from_columns(
        dim: usize,
        eigenvalues: Vec<Complex64>,
        vectors: DMatrix<Complex64>,
    ) -> Result<Self> {
        if eigenvalues
            .iter()
            .any(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::InvalidArgument("eigenvalues must be finite".into()));
        }
        let defect = orthonormality_defect(&vectors);
        if defect > tolerance::ORTHONORMAL {
            return Err(Error::NotOrthonormal { deviation: defect });
        }
        Ok(Self::sorted(dim, eigenvalues, vectors))
    }

    fn sorted(dim: usize, eigenvalues: Vec<Complex64>, vectors: DMatrix<Complex64>) -> Self {
        let order = descending_modulus_order(&eigenvalues);
        Self {
            dim,
            eigenvalues: order.iter().map(|&i| eigenvalues[i]).collect(),
            vectors: select_columns(&vectors, &order),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    /// Real parts of the eigenvalues; meaningful for Hermitian sources.
    pub fn real_eigenvalues(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|z| z.re).collect()
    }

    /// `|mu_n|`, descending.
    pub fn moduli(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|z| z.norm()).collect()
    }

    /// Moduli with zero (and sub-cutoff) eigenvalues removed: the index set of
    /// nonzero eigenvalues used by tail sums.
    pub fn nonzero_moduli(&self) -> Vec<f64> {
        let moduli = self.moduli();
        let lead = moduli.first().copied().unwrap_or(0.0);
        let cutoff = tolerance::SINGULAR_CUTOFF * lead;
        moduli.into_iter().filter(|&m| m > cutoff).collect()
    }

    pub fn eigenvector(&self, n: usize) -> Vec<Complex64> {
        self.vectors.column(n).iter().copied().collect()
    }

    pub fn eigenvectors(&self) -> Vec<Vec<Complex64>> {
        (0..self.len()).map(|n| self.eigenvector(n)).collect()
    }

    /// `sum_n mu_n |u_n><u_n|`.
    pub fn to_matrix(&self) -> ComplexMatrix {
        let scaled = DMatrix::from_fn(self.dim, self.len(), |r, c| {
            self.vectors[(r, c)] * self.eigenvalues[c]
        });
        ComplexMatrix(scaled * self.vectors.adjoint())
    }

    /// `P_N`: projection onto the span of the first `n` eigenvectors.
    pub fn leading_projection(&self, n: usize) -> Result<Projection> {
        if n > self.len() {
            return Err(Error::InvalidArgument(format!(
                "rank {n} exceeds spectrum length {}",
                self.len()
            )));
        }
        projection_from_vectors(self.dim, &self.eigenvectors()[..n])
    }
}

/// Singular values (descending) with left vectors `v_n` and right vectors `u_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularSpectrum {
    values: Vec<f64>,
    left: DMatrix<Complex64>,
    right: DMatrix<Complex64>,
}

impl SingularSpectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn left_vector(&self, n: usize) -> Vec<Complex64> {
        self.left.column(n).iter().copied().collect()
    }

    pub fn right_vector(&self, n: usize) -> Vec<Complex64> {
        self.right.column(n).iter().copied().collect()
    }

    /// `sum_n lambda_n |v_n><u_n|`.
    pub fn to_matrix(&self) -> ComplexMatrix {
        let scaled = DMatrix::from_fn(self.left.nrows(), self.values.len(), |r, c| {
            self.left[(r, c)] * self.values[c]
        });
        ComplexMatrix(scaled * self.right.adjoint())
    }
}

/// Orthogonal projection `P = P* = P²` with its rank.
#[derive(Clone, Debug, PartialEq)]
pub struct Projection {
    matrix: ComplexMatrix,
    rank: usize,
}

impl Projection {
    /// Validates `matrix` as an orthogonal projection.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let herm = matrix.max_abs_diff(&matrix.adjoint());
        let idem = (&matrix * &matrix).max_abs_diff(&matrix);
        let deviation = herm.max(idem);
        if deviation > tolerance::PROJECTION {
            return Err(Error::NotAProjection { deviation });
        }
        let trace: f64 = matrix.diagonal().iter().map(|z| z.re).sum();
        let rank = trace.round();
        if (trace - rank).abs() > tolerance::PROJECTION * matrix.dim() as f64 {
            return Err(Error::NotAProjection {
                deviation: (trace - rank).abs(),
            });
        }
        Ok(Self {
            matrix,
            rank: rank as usize,
        })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::zeros(dim),
            rank: 0,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim),
            rank: dim,
        }
    }

    /// Projection onto the coordinate axes listed in `indices`.
    pub fn coordinate(dim: usize, indices: &[usize]) -> Result<Self> {
        let mut diag = vec![0.0; dim];
        for &i in indices {
            if i >= dim {
                return Err(Error::InvalidArgument(format!(
                    "coordinate {i} out of range for dimension {dim}"
                )));
            }
            diag[i] = 1.0;
        }
        let rank = diag.iter().filter(|&&x| x == 1.0).count();
        Ok(Self {
            matrix: ComplexMatrix::from_real_diagonal(&diag),
            rank,
        })
    }

    /// `I - P`.
    pub fn complement(&self) -> Self {
        let dim = self.dim();
        Self {
            matrix: &ComplexMatrix::identity(dim) - &self.matrix,
            rank: dim - self.rank,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

/// Spectral decomposition of a Hermitian matrix. The zero matrix yields an
/// empty spectrum; otherwise all `dim` eigenvalues are returned, zeros included.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<Spectrum> {
    let deviation = m.hermitian_deviation();
    if deviation > tolerance::HERMITIAN * m.frobenius_norm().max(1.0) {
        return Err(Error::NotHermitian { deviation });
    }
    let dim = m.dim();
    if m.is_zero() {
        return Ok(Spectrum::empty(dim));
    }
    let symmetric = (&m.0 + m.0.adjoint()) * Complex64::new(0.5, 0.0);
    let eig =
        SymmetricEigen::try_new(symmetric, f64::EPSILON, 1000 * dim).ok_or(Error::NoConvergence)?;
    let eigenvalues: Vec<Complex64> = eig
        .eigenvalues
        .iter()
        .map(|&x| Complex64::new(x, 0.0))
        .collect();
    Ok(Spectrum::sorted(dim, eigenvalues, eig.eigenvectors))
}

/// Mixing weight for the Hermitian parts in [`normal_eig`]; any irrational-ish
/// value avoids accidental eigenvalue collisions.
const NORMAL_MIX: f64 = 0.754_877_666_246_692_8;

/// Spectral decomposition of a normal matrix.
///
/// `M = H1 + i H2` with commuting Hermitian parts, so the eigenvectors of
/// `H1 + c H2` diagonalize `M` whenever `c` separates the joint eigenvalue
/// pairs. Eigenvalues are read off as `u_n* M u_n` and the result is checked
/// against the reconstruction tolerance.
pub fn normal_eig(m: &ComplexMatrix, tol: f64) -> Result<Spectrum> {
    if !is_normal(m, tol) {
        return Err(Error::InvalidArgument("matrix is not normal".into()));
    }
    if m.is_hermitian(tolerance::HERMITIAN) {
        return hermitian_eig(m);
    }
    let dim = m.dim();
    let adj = m.adjoint();
    let h1 = (m + &adj).scale_real(0.5);
    let h2 = (m - &adj).scale(Complex64::new(0.0, -0.5));
    let mixed = &h1 + &h2.scale_real(NORMAL_MIX);
    let basis = hermitian_eig(&mixed)?;
    if basis.len() < dim {
        return Ok(Spectrum::empty(dim));
    }
    let u = &basis.vectors;
    let diag = u.adjoint() * &m.0 * u;
    let eigenvalues: Vec<Complex64> = (0..dim).map(|i| diag[(i, i)]).collect();
    let spectrum = Spectrum::sorted(dim, eigenvalues, u.clone());
    let error = spectrum.to_matrix().max_abs_diff(m);
    if error > tolerance::RECONSTRUCTION * m.frobenius_norm().max(1.0) {
        return Err(Error::NoConvergence);
    }
    Ok(spectrum)
}

/// Canonical decomposition `M = sum_n lambda_n |v_n><u_n|`.
pub fn singular_spectrum(m: &ComplexMatrix) -> Result<SingularSpectrum> {
    let dim = m.dim();
    let svd = SVD::try_new(m.0.clone(), true, true, f64::EPSILON, 1000 * dim)
        .ok_or(Error::NoConvergence)?;
    let u = svd.u.ok_or(Error::NoConvergence)?;
    let v_t = svd.v_t.ok_or(Error::NoConvergence)?;
    let raw: Vec<f64> = svd.singular_values.iter().copied().collect();
    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by(|&a, &b| raw[b].total_cmp(&raw[a]));
    let v = v_t.adjoint();
    Ok(SingularSpectrum {
        values: order.iter().map(|&i| raw[i].max(0.0)).collect(),
        left: select_columns(&u, &order),
        right: select_columns(&v, &order),
    })
}

/// Singular values only, descending.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let dim = m.dim();
    let svd = SVD::try_new(m.0.clone(), false, false, f64::EPSILON, 1000 * dim)
        .ok_or(Error::NoConvergence)?;
    let mut values: Vec<f64> = svd.singular_values.iter().map(|&x| x.max(0.0)).collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// Largest singular value.
pub fn operator_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values(m)?.first().copied().unwrap_or(0.0))
}

/// `|M| = (M* M)^{1/2}`, assembled from the right singular vectors.
pub fn modulus(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let s = singular_spectrum(m)?;
    let scaled = DMatrix::from_fn(s.right.nrows(), s.values.len(), |r, c| {
        s.right[(r, c)] * s.values[c]
    });
    let mut out = scaled * s.right.adjoint();
    // exact Hermitian symmetry
    let half = Complex64::new(0.5, 0.0);
    out = (&out + out.adjoint()) * half;
    Ok(ComplexMatrix(out))
}

/// True iff `||MM* - M*M||_inf <= tol * ||M||_inf²`.
pub fn is_normal(m: &ComplexMatrix, tol: f64) -> bool {
    let defect = &(m * &m.adjoint()) - &(&m.adjoint() * m);
    let op = |x: &ComplexMatrix| operator_norm(x).unwrap_or_else(|_| x.frobenius_norm());
    let scale = op(m);
    op(&defect) <= tol * scale * scale
}

/// `sum_n |u_n><u_n|` for an orthonormal family in `dim` dimensions.
pub fn projection_from_vectors(dim: usize, vectors: &[Vec<Complex64>]) -> Result<Projection> {
    if let Some(bad) = vectors.iter().find(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad.len(),
        });
    }
    let basis = DMatrix::from_fn(dim, vectors.len(), |r, c| vectors[c][r]);
    let defect = orthonormality_defect(&basis);
    if defect > tolerance::ORTHONORMAL {
        return Err(Error::NotOrthonormal { deviation: defect });
    }
    let matrix = ComplexMatrix(&basis * basis.adjoint());
    Ok(Projection {
        matrix,
        rank: vectors.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_eig() {
        let s = hermitian_eig(&ComplexMatrix::from_real_diagonal(&[1.0, 0.0])).unwrap();
        assert_eq!(s.real_eigenvalues(), vec![1.0, 0.0]);
        assert!((s.eigenvector(0)[0].norm() - 1.0).abs() < 1e-15);
        assert!((s.eigenvector(1)[1].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pauli_x_tie_broken_by_value() {
        let x = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let s = hermitian_eig(&x).unwrap();
        let ev = s.real_eigenvalues();
        assert!((ev[0] - 1.0).abs() < 1e-14);
        assert!((ev[1] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn tie_break_on_imaginary_part() {
        let order = descending_modulus_order(&[c(0.0, -1.0), c(0.0, 1.0), c(-1.0, 0.0)]);
        assert_eq!(order, vec![1, 0, 2]);
    }

    #[test]
    fn zero_matrix_has_empty_spectrum() {
        let s = hermitian_eig(&ComplexMatrix::zeros(3)).unwrap();
        assert!(s.is_empty());
        assert_eq!(s.dim(), 3);
        assert!(s.to_matrix().is_zero());
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(hermitian_eig(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn singular_values_of_signed_diagonal() {
        let s = singular_spectrum(&ComplexMatrix::from_real_diagonal(&[3.0, -4.0])).unwrap();
        assert!((s.values()[0] - 4.0).abs() < 1e-14);
        assert!((s.values()[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn zero_matrix_singular_values() {
        let s = singular_spectrum(&ComplexMatrix::zeros(4)).unwrap();
        assert!(s.values().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn modulus_of_diagonal() {
        let m = modulus(&ComplexMatrix::from_real_diagonal(&[-2.0, 5.0])).unwrap();
        let expected = ComplexMatrix::from_real_diagonal(&[2.0, 5.0]);
        assert!(m.max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn modulus_of_unitary_is_identity() {
        let h = 1.0 / 2f64.sqrt();
        let u = ComplexMatrix::from_rows(&[
            vec![c(h, 0.0), c(0.0, h), c(0.0, 0.0)],
            vec![c(0.0, h), c(h, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)],
        ])
        .unwrap();
        let m = modulus(&u).unwrap();
        assert!(m.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-14);
    }

    #[test]
    fn normality() {
        let herm = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(2.0, -1.0)],
            vec![c(2.0, 1.0), c(-3.0, 0.0)],
        ])
        .unwrap();
        assert!(is_normal(&herm, 1e-12));
        let jordan = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(!is_normal(&jordan, 1e-12));
        let diag = ComplexMatrix::from_diagonal(&[c(0.0, 1.0), c(1.0, 1.0)]);
        assert!(is_normal(&diag, 1e-12));
        assert!(is_normal(&ComplexMatrix::zeros(2), 1e-12));
    }

    #[test]
    fn projection_from_basis_vector() {
        let p = projection_from_vectors(2, &[vec![ONE, ZERO]]).unwrap();
        assert_eq!(p.rank(), 1);
        assert_eq!(p.matrix(), &ComplexMatrix::from_real_diagonal(&[1.0, 0.0]));
    }

    #[test]
    fn empty_projection_is_zero() {
        let p = projection_from_vectors(3, &[]).unwrap();
        assert_eq!(p.rank(), 0);
        assert!(p.matrix().is_zero());
    }

    #[test]
    fn projection_rejects_non_orthonormal() {
        let r = projection_from_vectors(2, &[vec![ONE, ZERO], vec![ONE, ONE]]);
        assert!(matches!(r, Err(Error::NotOrthonormal { .. })));
        let r = projection_from_vectors(2, &[vec![c(2.0, 0.0), ZERO]]);
        assert!(matches!(r, Err(Error::NotOrthonormal { .. })));
    }

    #[test]
    fn leading_projection_has_trace_n() {
        let m = ComplexMatrix::from_real_diagonal(&[0.5, 0.3, 0.2]);
        let s = hermitian_eig(&m).unwrap();
        let p = s.leading_projection(2).unwrap();
        let tr: f64 = p.matrix().diagonal().iter().map(|z| z.re).sum();
        assert!((tr - 2.0).abs() < 1e-14);
        assert_eq!(p.rank(), 2);
    }

    #[test]
    fn projection_validation() {
        assert!(Projection::new(ComplexMatrix::from_real_diagonal(&[1.0, 0.0])).is_ok());
        assert!(Projection::new(ComplexMatrix::from_real_diagonal(&[0.5, 0.0])).is_err());
        let c = Projection::coordinate(3, &[0, 2]).unwrap().complement();
        assert_eq!(c.rank(), 1);
        assert_eq!(
            c.matrix(),
            &ComplexMatrix::from_real_diagonal(&[0.0, 1.0, 0.0])
        );
    }

    #[test]
    fn from_rows_validation() {
        assert!(ComplexMatrix::from_rows(&[]).is_err());
        assert!(ComplexMatrix::from_real_rows(&[vec![1.0, 2.0]]).is_err());
        assert!(matches!(
            ComplexMatrix::from_real_rows(&[vec![f64::NAN]]),
            Err(Error::NonFinite { row: 0, col: 0 })
        ));
    }

    #[test]
    fn normal_eig_recovers_complex_spectrum() {
        let h = 1.0 / 2f64.sqrt();
        let u = ComplexMatrix::from_rows(&[vec![c(h, 0.0), c(0.0, h)], vec![c(0.0, h), c(h, 0.0)]])
            .unwrap();
        let built = Spectrum::from_unitary(vec![c(0.3, 0.4), c(-0.1, 0.2)], &u).unwrap();
        let m = built.to_matrix();
        let s = normal_eig(&m, 1e-9).unwrap();
        assert!((s.eigenvalues()[0] - c(0.3, 0.4)).norm() < 1e-14);
        assert!((s.eigenvalues()[1] - c(-0.1, 0.2)).norm() < 1e-14);
        assert!(s.to_matrix().max_abs_diff(&m) < 1e-14);
        let jordan = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(normal_eig(&jordan, 1e-9).is_err());
    }

    #[test]
    fn normal_spectrum_from_unitary() {
        let s =
            Spectrum::from_unitary(vec![c(0.0, 0.5), c(-0.5, 0.0)], &ComplexMatrix::identity(2))
                .unwrap();
        // equal moduli: larger real part first
        assert_eq!(s.eigenvalues()[0], c(0.0, 0.5));
        let m = s.to_matrix();
        assert!(is_normal(&m, 1e-12));
        assert!(!m.is_hermitian(1e-9));
    }
}
