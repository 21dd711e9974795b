//! Compensated (Kahan–Babuška–Neumaier) summation.

use std::ops::AddAssign;

/// Running sum with a Neumaier error-compensation term.
#[derive(Clone, Copy, Debug, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl AddAssign<f64> for NeumaierSum {
    fn add_assign(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }
}

pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut acc = NeumaierSum::new();
    for x in values {
        acc += x;
    }
    acc.value()
}

/// `out[k] = sum_{n >= k} values[n]` for `k = 0..=len`; `out[len] = 0`.
/// Accumulates from the end so every suffix is itself a compensated sum.
pub fn suffix_sums(values: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; values.len() + 1];
    let mut acc = NeumaierSum::new();
    for (k, &x) in values.iter().enumerate().rev() {
        acc += x;
        out[k] = acc.value();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_terms() {
        let xs = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(compensated_sum(xs), 2.0);
        assert_eq!(xs.iter().sum::<f64>(), 0.0);
    }

    #[test]
    fn suffixes() {
        assert_eq!(
            suffix_sums(&[0.5, 0.25, 0.125]),
            vec![0.875, 0.375, 0.125, 0.0]
        );
        assert_eq!(suffix_sums(&[]), vec![0.0]);
    }

    #[test]
    fn geometric_tail_is_accurate() {
        // sum_{n>=10} 2^-n over 60 terms, exact in binary
        let xs: Vec<f64> = (0..70).map(|n| 0.5f64.powi(n)).collect();
        let tails = suffix_sums(&xs);
        let exact = 0.5f64.powi(9) - 0.5f64.powi(69);
        assert_eq!(tails[10], exact);
    }
}
