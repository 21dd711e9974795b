//! Schatten p-norms `||A||_p = (tr |A|^p)^{1/p}` for `1 <= p <= ∞`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{singular_values, ComplexMatrix};
use crate::summation::{compensated_sum, NeumaierSum};
use crate::tolerance;

/// A Schatten exponent `p` in `[1, ∞]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct PExponent(f64);

impl PExponent {
    pub const ONE: PExponent = PExponent(1.0);
    pub const TWO: PExponent = PExponent(2.0);
    pub const INFINITY: PExponent = PExponent(f64::INFINITY);

    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidArgument(format!(
                "Schatten exponent must satisfy 1 <= p <= ∞ (got {p})"
            )));
        }
        Ok(Self(p))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    /// Hölder conjugate `q = p/(p-1)`, with `1 <-> ∞`.
    pub fn conjugate(self) -> PExponent {
        if self.0 == 1.0 {
            Self::INFINITY
        } else if self.0.is_infinite() {
            Self::ONE
        } else {
            Self(self.0 / (self.0 - 1.0))
        }
    }

    /// `1/p`, zero for `p = ∞`.
    pub fn reciprocal(self) -> f64 {
        if self.is_infinite() {
            0.0
        } else {
            1.0 / self.0
        }
    }

    /// Rejects the endpoints: bounds on trace-norm error need `1 < p < ∞`.
    pub fn require_interior(self) -> Result<Self> {
        if self.0 > 1.0 && self.0.is_finite() {
            Ok(self)
        } else {
            Err(Error::InvalidExponent(self.to_string()))
        }
    }
}

impl fmt::Display for PExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl FromStr for PExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(Self::INFINITY),
            other => {
                let p: f64 = other
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("not a Schatten exponent: {s}")))?;
                Self::new(p)
            }
        }
    }
}

impl Serialize for PExponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_infinite() {
            serializer.serialize_str("inf")
        } else {
            serializer.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for PExponent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Number(f64),
            Text(String),
        }
        let p = match Repr::deserialize(deserializer)? {
            Repr::Number(p) => PExponent::new(p),
            Repr::Text(s) => s.parse(),
        };
        p.map_err(serde::de::Error::custom)
    }
}

/// `(sum_n s_n^p)^{1/p}` over descending non-negative singular values.
/// Values below `1e-14 * s_0` are treated as zero.
pub fn schatten_norm_of_values(values: &[f64], p: PExponent) -> f64 {
    let lead = values.iter().copied().fold(0.0, f64::max);
    if lead == 0.0 {
        return 0.0;
    }
    if p.is_infinite() {
        return lead;
    }
    let cutoff = tolerance::SINGULAR_CUTOFF * lead;
    let kept = values.iter().copied().filter(|&s| s > cutoff);
    if p.value() == 1.0 {
        return compensated_sum(kept);
    }
    let mut acc = NeumaierSum::new();
    for s in kept {
        acc += (s / lead).powf(p.value());
    }
    lead * acc.value().powf(1.0 / p.value())
}

pub fn schatten_norm(m: &ComplexMatrix, p: PExponent) -> Result<f64> {
    Ok(schatten_norm_of_values(&singular_values(m)?, p))
}

/// Several Schatten norms of one matrix from a single SVD.
pub fn schatten_norms(m: &ComplexMatrix, ps: &[PExponent]) -> Result<Vec<f64>> {
    let values = singular_values(m)?;
    Ok(ps
        .iter()
        .map(|&p| schatten_norm_of_values(&values, p))
        .collect())
}

pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    schatten_norm(m, PExponent::ONE)
}

pub fn trace(m: &ComplexMatrix) -> Complex64 {
    let diag = m.diagonal();
    Complex64::new(
        compensated_sum(diag.iter().map(|z| z.re)),
        compensated_sum(diag.iter().map(|z| z.im)),
    )
}
