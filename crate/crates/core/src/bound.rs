//! Trace-norm error certificates.
//!
//! For trace-one `A0` (normal) and `A`, and any truncation rank `N`,
//!
//! ```text
//! ||A0 - A||_1 <= 3 N^{(p-1)/p} ||A0 - A||_p + 2 sum_{n >= N} |mu_n(A0)|
//! ```
//!
//! The tail on the right is either summed from an explicit spectrum or bounded
//! by an analytic decay envelope ([`DecayModel`]). This module evaluates the
//! right-hand side, picks the best `N`, and provides the rank `N(eps)` at which
//! the tail first drops below `eps` together with the bound
//! `(3 N(eps)^{1/q} + 2) eps` obtained by evaluating at that rank.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{singular_values, ComplexMatrix, Spectrum};
use crate::norms::{schatten_norm, schatten_norm_of_values, PExponent};
use crate::special::riemann_zeta;
use crate::summation::{compensated_sum, suffix_sums};
use crate::tolerance;

/// Ranks scanned one by one before switching to a unimodal search.
const EXHAUSTIVE_SCAN_LIMIT: u64 = 1 << 20;

/// Envelope of the eigenvalue moduli `|mu_n|`, `n = 0, 1, 2, ...`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecayModel {
    /// `|mu_n| <= c (n+1)^{-alpha}`, `alpha > 1`.
    PowerLaw { c: f64, alpha: f64 },
    /// `|mu_n| <= c e^{-beta n}`, `beta > 0`.
    Exponential { c: f64, beta: f64 },
    /// Explicit descending moduli; zeros are dropped.
    Empirical { moduli: Vec<f64> },
}

/// `1 - e^{-beta}` without cancellation for small `beta`.
pub(crate) fn one_minus_exp_neg(beta: f64) -> f64 {
    -(-beta).exp_m1()
}

impl DecayModel {
    pub fn power_law(c: f64, alpha: f64) -> Result<Self> {
        let m = Self::PowerLaw { c, alpha };
        m.validate()?;
        Ok(m)
    }

    /// Power law normalized to unit total mass: `c = 1/zeta(alpha)`.
    pub fn normalized_power_law(alpha: f64) -> Result<Self> {
        if !(alpha > 1.0 && alpha.is_finite()) {
            return Err(Error::InvalidModel(format!(
                "power law needs alpha > 1, got {alpha}"
            )));
        }
        Self::power_law(1.0 / riemann_zeta(alpha), alpha)
    }

    pub fn exponential(c: f64, beta: f64) -> Result<Self> {
        let m = Self::Exponential { c, beta };
        m.validate()?;
        Ok(m)
    }

    /// Exponential envelope of the infinite Gibbs state: `c = 1 - e^{-beta}`.
    pub fn gibbs(beta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::InvalidModel(format!(
                "exponential needs beta > 0, got {beta}"
            )));
        }
        Self::exponential(one_minus_exp_neg(beta), beta)
    }

    pub fn empirical(moduli: Vec<f64>) -> Result<Self> {
        let m = Self::Empirical {
            moduli: moduli.into_iter().filter(|&x| x != 0.0).collect(),
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::PowerLaw { c, alpha } => {
                if !(c.is_finite() && *c > 0.0) {
                    return Err(Error::InvalidModel(format!(
                        "power law needs C > 0, got {c}"
                    )));
                }
                if !(alpha.is_finite() && *alpha > 1.0) {
                    return Err(Error::InvalidModel(format!(
                        "power law needs alpha > 1, got {alpha}"
                    )));
                }
            }
            Self::Exponential { c, beta } => {
                if !(c.is_finite() && *c > 0.0) {
                    return Err(Error::InvalidModel(format!(
                        "exponential needs C > 0, got {c}"
                    )));
                }
                if !(beta.is_finite() && *beta > 0.0) {
                    return Err(Error::InvalidModel(format!(
                        "exponential needs beta > 0, got {beta}"
                    )));
                }
            }
            Self::Empirical { moduli } => {
                if moduli.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
                    return Err(Error::InvalidModel(
                        "empirical moduli must be finite and non-negative".into(),
                    ));
                }
                if moduli.windows(2).any(|w| w[1] > w[0]) {
                    return Err(Error::InvalidModel(
                        "empirical moduli must be descending".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn is_analytic(&self) -> bool {
        !matches!(self, Self::Empirical { .. })
    }

    /// The envelope value at index `n`.
    pub fn envelope(&self, n: usize) -> f64 {
        match self {
            Self::PowerLaw { c, alpha } => c * ((n + 1) as f64).powf(-alpha),
            Self::Exponential { c, beta } => c * (-beta * n as f64).exp(),
            Self::Empirical { moduli } => moduli.get(n).copied().unwrap_or(0.0),
        }
    }

    /// Upper bound on `sum_{n >= rank} |mu_n|`: the exact suffix sum for
    /// empirical moduli, the closed form for `rank >= 1`, and the full
    /// envelope mass at `rank = 0`.
    pub fn tail_bound(&self, rank: u64) -> f64 {
        match self {
            Self::Empirical { moduli } => tail_sum(moduli, rank as usize),
            Self::PowerLaw { c, alpha } if rank == 0 => c * riemann_zeta(*alpha),
            Self::Exponential { c, beta } if rank == 0 => c / one_minus_exp_neg(*beta),
            _ => closed_form_unchecked(self, rank as f64),
        }
    }
}

fn closed_form_unchecked(model: &DecayModel, rank: f64) -> f64 {
    match model {
        DecayModel::PowerLaw { c, alpha } => c / (alpha - 1.0) * rank.powf(1.0 - alpha),
        DecayModel::Exponential { c, beta } => c * (-beta * rank).exp() / one_minus_exp_neg(*beta),
        DecayModel::Empirical { .. } => unreachable!("closed form of an empirical model"),
    }
}

/// `sum_{n >= rank} moduli[n]`, compensated; zero past the end.
pub fn tail_sum(moduli: &[f64], rank: usize) -> f64 {
    if rank >= moduli.len() {
        return 0.0;
    }
    compensated_sum(moduli[rank..].iter().rev().copied())
}

/// Integral-comparison bound on the tail of an analytic envelope:
/// `c/(alpha-1) rank^{1-alpha}` or `c e^{-beta rank}/(1 - e^{-beta})`.
pub fn closed_form_tail(model: &DecayModel, rank: u64) -> Result<f64> {
    model.validate()?;
    if !model.is_analytic() {
        return Err(Error::UnsupportedModel);
    }
    if rank == 0 {
        return Err(Error::InvalidArgument(
            "closed-form tail requires rank >= 1".into(),
        ));
    }
    Ok(closed_form_unchecked(model, rank as f64))
}

/// An evaluated right-hand side of the trace-norm bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub p: PExponent,
    /// `||A0 - A||_p`.
    pub p_error: f64,
    /// Truncation rank.
    pub n: u64,
    /// `3 n^{(p-1)/p} p_error`.
    pub truncation_term: f64,
    /// `2 tail(n)`.
    pub tail_term: f64,
    pub bound: f64,
    pub tail_source: Option<DecayModel>,
}

fn truncation_term(p_error: f64, p: PExponent, rank: u64) -> f64 {
    3.0 * (rank as f64).powf(1.0 - p.reciprocal()) * p_error
}

fn check_p_error(p_error: f64) -> Result<()> {
    if !(p_error.is_finite() && p_error >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "p-norm error must be finite and non-negative, got {p_error}"
        )));
    }
    Ok(())
}

fn assemble(
    p_error: f64,
    p: PExponent,
    rank: u64,
    tail: f64,
    tail_source: Option<DecayModel>,
) -> Certificate {
    let truncation_term = truncation_term(p_error, p, rank);
    let tail_term = 2.0 * tail;
    Certificate {
        p,
        p_error,
        n: rank,
        truncation_term,
        tail_term,
        bound: truncation_term + tail_term,
        tail_source,
    }
}

/// Evaluates the bound at a single rank with a caller-supplied tail.
pub fn theorem1_bound(p_error: f64, p: PExponent, rank: u64, tail: f64) -> Result<Certificate> {
    p.require_interior()?;
    check_p_error(p_error)?;
    if !(tail.is_finite() && tail >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tail must be finite and non-negative, got {tail}"
        )));
    }
    Ok(assemble(p_error, p, rank, tail, None))
}

/// Default upper end of the rank search: the number of nonzero moduli for
/// empirical models, `ceil(4 N(p_error))` for analytic ones.
pub fn default_rank_limit(model: &DecayModel, p_error: f64) -> Result<u64> {
    match model {
        DecayModel::Empirical { moduli } => Ok((moduli.len() as u64).max(1)),
        _ => {
            if p_error <= 0.0 {
                return Err(Error::InvalidArgument(
                    "analytic models need a positive p-norm error or an explicit rank limit".into(),
                ));
            }
            let n = n_epsilon(model, p_error)?;
            Ok(n.saturating_mul(4).clamp(1, u64::MAX as u128) as u64)
        }
    }
}

/// Minimizes the bound over `rank = 0..=rank_limit`; ties go to the smallest
/// rank.
///
/// Empirical spectra are scanned exhaustively. Analytic envelopes are scanned
/// exhaustively up to 2^20; beyond that the objective is unimodal (for the
/// exponential envelope, past `1/(p beta)`), and an integer ternary search
/// covers the remainder.
pub fn optimal_certificate(
    p_error: f64,
    p: PExponent,
    model: &DecayModel,
    rank_limit: u64,
) -> Result<Certificate> {
    p.require_interior()?;
    check_p_error(p_error)?;
    model.validate()?;
    if rank_limit == 0 {
        return Err(Error::InvalidArgument(
            "rank limit must be at least 1".into(),
        ));
    }
    let objective = |rank: u64, tail: f64| truncation_term(p_error, p, rank) + 2.0 * tail;

    let mut best_rank = 0;
    let mut best_value = f64::INFINITY;
    let mut consider = |rank: u64, value: f64| {
        if value < best_value || (value == best_value && rank < best_rank) {
            best_rank = rank;
            best_value = value;
        }
    };

    match model {
        DecayModel::Empirical { moduli } => {
            let tails = suffix_sums(moduli);
            let last = rank_limit.min(moduli.len() as u64);
            for rank in 0..=last {
                consider(rank, objective(rank, tails[rank as usize]));
            }
        }
        _ => {
            let last = rank_limit.min(EXHAUSTIVE_SCAN_LIMIT);
            for rank in 0..=last {
                consider(rank, objective(rank, model.tail_bound(rank)));
            }
            if rank_limit > EXHAUSTIVE_SCAN_LIMIT {
                let mut lo = EXHAUSTIVE_SCAN_LIMIT;
                if let DecayModel::Exponential { beta, .. } = model {
                    let turn = (1.0 / (p.value() * beta)).ceil();
                    if turn.is_finite() && turn > lo as f64 {
                        lo = (turn as u64).min(rank_limit);
                    }
                }
                let f = |rank: u64| objective(rank, model.tail_bound(rank));
                let mut hi = rank_limit;
                while hi - lo > 2 {
                    let m1 = lo + (hi - lo) / 3;
                    let m2 = hi - (hi - lo) / 3;
                    if f(m1) <= f(m2) {
                        hi = m2;
                    } else {
                        lo = m1;
                    }
                }
                for rank in lo..=hi {
                    consider(rank, f(rank));
                }
            }
        }
    }
    let tail = model.tail_bound(best_rank);
    Ok(assemble(p_error, p, best_rank, tail, Some(model.clone())))
}

/// `N(eps) = min { N : tail(N) < eps }`. Exact for empirical moduli; for
/// analytic envelopes the closed-form tail is used, which can only make the
/// returned rank larger.
pub fn n_epsilon(model: &DecayModel, eps: f64) -> Result<u128> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "epsilon must be positive, got {eps}"
        )));
    }
    model.validate()?;
    if let DecayModel::Empirical { moduli } = model {
        let tails = suffix_sums(moduli);
        let rank = tails.iter().position(|&t| t < eps).unwrap_or(moduli.len());
        return Ok(rank as u128);
    }
    if model.tail_bound(0) < eps {
        return Ok(0);
    }
    // real solution of closed_form(x) = eps
    let crossing = match model {
        DecayModel::PowerLaw { c, alpha } => (c / ((alpha - 1.0) * eps)).powf(1.0 / (alpha - 1.0)),
        DecayModel::Exponential { c, beta } => (c / (eps * one_minus_exp_neg(*beta))).ln() / beta,
        DecayModel::Empirical { .. } => unreachable!(),
    };
    let tail = |rank: u128| closed_form_unchecked(model, rank as f64);
    let mut rank = (crossing.floor().max(0.0) as u128).saturating_add(1).max(1);
    // settle floating-point rounding at the crossing
    for _ in 0..4 {
        if rank > 1 && tail(rank - 1) < eps {
            rank -= 1;
        } else if tail(rank) >= eps {
            rank = rank.saturating_add(1);
        } else {
            break;
        }
    }
    Ok(rank)
}

/// `(3 N(p_error)^{1/q} + 2) p_error`, `q = p/(p-1)`.
pub fn corollary2_bound(p_error: f64, p: PExponent, model: &DecayModel) -> Result<f64> {
    p.require_interior()?;
    if !(p_error > 0.0 && p_error.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "p-norm error must be positive, got {p_error}"
        )));
    }
    let rank = n_epsilon(model, p_error)?;
    let root = (rank as f64).powf(p.conjugate().reciprocal());
    Ok((3.0 * root + 2.0) * p_error)
}

/// End-to-end certification when `A0` is known exactly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactCertification {
    pub certificate: Certificate,
    /// `||A0 - A||_1`.
    pub true_1_error: f64,
    /// `||A0 - A||_p`.
    pub p_error: f64,
}

/// Certifies an estimate `a` of the normal operator whose spectral
/// decomposition is `a0`, and also reports the true trace-norm distance.
pub fn certify_exact(a0: &Spectrum, a: &ComplexMatrix, p: PExponent) -> Result<ExactCertification> {
    p.require_interior()?;
    if a0.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a0.dim(),
            found: a.dim(),
        });
    }
    let a0_norm = compensated_sum(a0.moduli());
    if (a0_norm - 1.0).abs() > tolerance::NORMALIZATION {
        return Err(Error::NotNormalized {
            which: "A0",
            norm: a0_norm,
        });
    }
    let a_norm = schatten_norm(a, PExponent::ONE)?;
    if (a_norm - 1.0).abs() > tolerance::NORMALIZATION {
        return Err(Error::NotNormalized {
            which: "A",
            norm: a_norm,
        });
    }
    let diff = &a0.to_matrix() - a;
    let values = singular_values(&diff)?;
    let p_error = schatten_norm_of_values(&values, p);
    let true_1_error = schatten_norm_of_values(&values, PExponent::ONE);
    let model = DecayModel::empirical(a0.nonzero_moduli())?;
    let limit = default_rank_limit(&model, p_error)?;
    let certificate = optimal_certificate(p_error, p, &model, limit)?;
    Ok(ExactCertification {
        certificate,
        true_1_error,
        p_error,
    })
}
