//! Compressions `PAP` and pinchings `sum_i P_i A P_i`, plus trace-norm checks
//! of how they interact with `||A||_1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{operator_norm, ComplexMatrix, Projection};
use crate::norms::trace_norm;
use crate::tolerance;

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// `P A P`.
pub fn compress(p: &Projection, a: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_dim(a.dim(), p.dim())?;
    Ok(&(p.matrix() * a) * p.matrix())
}

/// `sum_i P_i A P_i` over a family of mutually orthogonal projections. The
/// family need not sum to the identity.
pub fn pinch(a: &ComplexMatrix, projections: &[Projection]) -> Result<ComplexMatrix> {
    for p in projections {
        check_dim(a.dim(), p.dim())?;
    }
    for (i, pi) in projections.iter().enumerate() {
        for (j, pj) in projections.iter().enumerate().skip(i + 1) {
            let overlap = (pi.matrix() * pj.matrix()).frobenius_norm();
            if overlap > tolerance::PROJECTION {
                return Err(Error::NotMutuallyOrthogonal {
                    first: i,
                    second: j,
                    overlap,
                });
            }
        }
    }
    let mut out = ComplexMatrix::zeros(a.dim());
    for p in projections {
        out = &out + &compress(p, a)?;
    }
    Ok(out)
}

/// Both sides of `||PAP||_1 + ||QAQ||_1 = ||PAP + QAQ||_1` with `Q = I - P`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockSum {
    pub separate: f64,
    pub joint: f64,
}

pub fn block_sum_check(a: &ComplexMatrix, p: &Projection) -> Result<BlockSum> {
    let pap = compress(p, a)?;
    let qaq = compress(&p.complement(), a)?;
    Ok(BlockSum {
        separate: trace_norm(&pap)? + trace_norm(&qaq)?,
        joint: trace_norm(&(&pap + &qaq))?,
    })
}

/// `lhs = ||PAP||_1 + ||QAQ||_1` against `rhs = ||A||_1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitBound {
    pub lhs: f64,
    pub rhs: f64,
    /// `||PA - AP||_inf <= 1e-9 * max(1, ||A||_inf)`.
    pub commuting: bool,
}

pub fn split_bound_check(a: &ComplexMatrix, p: &Projection) -> Result<SplitBound> {
    check_dim(a.dim(), p.dim())?;
    let pap = compress(p, a)?;
    let qaq = compress(&p.complement(), a)?;
    let commutator = p.matrix().commutator(a);
    let scale = operator_norm(a)?.max(1.0);
    Ok(SplitBound {
        lhs: trace_norm(&pap)? + trace_norm(&qaq)?,
        rhs: trace_norm(a)?,
        commuting: operator_norm(&commutator)? <= tolerance::PROJECTION * scale,
    })
}
