//! Reference eigenvalues that share no code with the library: Householder
//! reduction to a real tridiagonal matrix, then Sturm-sequence bisection on
//! its characteristic polynomial.

#![allow(dead_code)]

use schatten_core::{Complex64, ComplexMatrix};

type Dense = Vec<Vec<Complex64>>;

fn dense(m: &ComplexMatrix) -> Dense {
    let n = m.dim();
    (0..n)
        .map(|r| (0..n).map(|c| m.get(r, c)).collect())
        .collect()
}

/// Diagonal and off-diagonal moduli of a Householder-tridiagonalized
/// Hermitian matrix.
pub fn tridiagonalize(m: &ComplexMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = m.dim();
    let mut a = dense(m);
    for k in 0..n.saturating_sub(2) {
        let norm = (k + 1..n).map(|i| a[i][k].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = a[k + 1][k];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let mut v: Vec<Complex64> = (0..n)
            .map(|i| {
                if i > k {
                    a[i][k]
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        v[k + 1] += phase * norm;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut v {
            *z /= vnorm;
        }
        // a <- (I - 2vv*) a (I - 2vv*)
        let av: Vec<Complex64> = (0..n)
            .map(|r| (0..n).map(|c| a[r][c] * v[c]).sum())
            .collect();
        let vav: Complex64 = (0..n).map(|r| v[r].conj() * av[r]).sum();
        let va: Vec<Complex64> = (0..n)
            .map(|c| (0..n).map(|i| v[i].conj() * a[i][c]).sum())
            .collect();
        let two = Complex64::new(2.0, 0.0);
        for r in 0..n {
            for c in 0..n {
                a[r][c] = a[r][c] - two * av[r] * v[c].conj() - two * v[r] * va[c]
                    + Complex64::new(4.0, 0.0) * v[r] * vav * v[c].conj();
            }
        }
    }
    let diag = (0..n).map(|i| a[i][i].re).collect();
    let off = (1..n).map(|i| a[i][i - 1].norm()).collect();
    (diag, off)
}

/// Number of eigenvalues of the tridiagonal matrix strictly below `x`.
fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let b2 = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        q = diag[i] - x - if i == 0 { 0.0 } else { b2 / q };
        if q == 0.0 {
            q = -f64::EPSILON * (x.abs() + 1.0);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let (diag, off) = tridiagonalize(m);
    let n = diag.len();
    let radius = (0..n)
        .map(|i| {
            let left = if i > 0 { off[i - 1] } else { 0.0 };
            let right = if i + 1 < n { off[i] } else { 0.0 };
            diag[i].abs() + left + right
        })
        .fold(0.0, f64::max);
    (0..n)
        .map(|k| {
            let (mut lo, mut hi) = (-radius - 1.0, radius + 1.0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if sturm_count(&diag, &off, mid) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

/// Singular values, descending, as square roots of the eigenvalues of `M*M`.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    let gram = &m.adjoint() * m;
    let mut values: Vec<f64> = hermitian_eigenvalues(&gram)
        .into_iter()
        .map(|x| x.max(0.0).sqrt())
        .collect();
    values.reverse();
    values
}

/// `(sum sigma^p)^{1/p}` from the oracle singular values.
pub fn schatten_norm(m: &ComplexMatrix, p: f64) -> f64 {
    let values = singular_values(m);
    if p.is_infinite() {
        return values[0];
    }
    values.iter().map(|s| s.powf(p)).sum::<f64>().powf(1.0 / p)
}
