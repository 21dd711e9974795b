//! Riemann zeta function for real arguments `s > 1`, used to normalize
//! infinite power-law spectra.

/// Bernoulli numbers B_2, B_4, ..., B_12.
const BERNOULLI: [f64; 6] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
];

/// `zeta(s) = sum_{n>=1} n^{-s}` by Euler–Maclaurin summation with a
/// 32-term head. Accurate to a few ulps for `s > 1`.
pub fn riemann_zeta(s: f64) -> f64 {
    assert!(s > 1.0, "zeta requires s > 1");
    const HEAD: usize = 32;
    let head = crate::summation::compensated_sum((1..HEAD).rev().map(|n| (n as f64).powf(-s)));
    let n = HEAD as f64;
    let mut tail = n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);
    // rising factorial s (s+1) ... (s+2k-2) / (2k)! times n^{-s-2k+1}
    let mut coeff = s / n.powf(s + 1.0);
    let mut factorial = 2.0;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let k = k + 1;
        tail += b / factorial * coeff;
        let j = 2.0 * k as f64;
        coeff *= (s + j - 1.0) * (s + j) / (n * n);
        factorial *= (j + 1.0) * (j + 2.0);
    }
    head + tail
}
