//! Verification campaigns over seeded random corpora, and the convergence
//! sweeps.
//!
//! Every check records `lhs <= rhs` with a tolerance; its slack is
//! `rhs - lhs` and it is a violation when the slack is below `-tolerance`.
//! Equality checks are recorded as `|difference| <= 0`. Trials run in
//! parallel, each on its own ChaCha stream `(seed, trial)`, and are reduced in
//! trial order, so reports do not depend on scheduling.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bound::{certify_exact, corollary2_bound, n_epsilon, DecayModel};
use crate::error::{Error, Result};
use crate::linalg::{singular_values, ComplexMatrix, Spectrum};
use crate::norms::{schatten_norm, schatten_norm_of_values, schatten_norms, PExponent};
use crate::pinching::{block_sum_check, compress, pinch, split_bound_check};
use crate::state_gen::{
    gibbs_state, ginibre, perturb_renormalized_from, power_law_state, random_density_matrix_from,
    random_normal_spectrum, random_orthogonal_family, random_projection,
    random_trace_one_operator_from, random_unitary, stream_rng, GeneratedState, StateRng,
};
use crate::summation::suffix_sums;

/// Slack below which a failed check is treated as an implementation bug
/// rather than rounding noise.
pub const MATHEMATICAL_VIOLATION: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub trials: usize,
    pub dims: Vec<usize>,
    pub p_grid: Vec<PExponent>,
    pub seed: u64,
    pub tolerances: BTreeMap<String, f64>,
}

fn tolerances(entries: &[(&str, f64)]) -> BTreeMap<String, f64> {
    entries.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

fn interior_grid() -> Vec<PExponent> {
    [1.25, 1.5, 2.0, 3.0, 5.0]
        .iter()
        .map(|&p| PExponent::new(p).unwrap())
        .collect()
}

impl CampaignConfig {
    /// 1000 trials, dims {2, 4, 8, 16, 32}, p in {1.25, 1.5, 2, 3, 5}.
    pub fn theorem1_default() -> Self {
        Self {
            trials: 1000,
            dims: vec![2, 4, 8, 16, 32],
            p_grid: interior_grid(),
            seed: 0,
            tolerances: tolerances(&[("inequality", 1e-9)]),
        }
    }

    /// 1000 trials, dims 2..=16.
    pub fn lemmas_default() -> Self {
        Self {
            trials: 1000,
            dims: (2..=16).collect(),
            p_grid: Vec::new(),
            seed: 0,
            tolerances: tolerances(&[("inequality", 1e-9), ("equality_relative", 1e-8)]),
        }
    }

    /// 200 trials, dims 2..=16, p in {1, 1.5, 2, 3, ∞}.
    pub fn norms_default() -> Self {
        Self {
            trials: 200,
            dims: (2..=16).collect(),
            p_grid: [1.0, 1.5, 2.0, 3.0, f64::INFINITY]
                .iter()
                .map(|&p| PExponent::new(p).unwrap())
                .collect(),
            seed: 0,
            tolerances: tolerances(&[
                ("inequality", 1e-10),
                ("unitary_invariance", 1e-9),
                ("projection_norm", 1e-12),
                ("rank_one", 1e-12),
            ]),
        }
    }

    fn tolerance(&self, name: &str) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(0.0)
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be at least 1".into()));
        }
        if self.dims.is_empty() || self.dims.contains(&0) {
            return Err(Error::InvalidArgument(
                "dims must be non-empty and positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub trial: usize,
    pub property: String,
    /// Human-readable identification of the inputs (seed, trial, sizes).
    pub inputs_digest: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub tolerance: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportStatus {
    Clean,
    Violations,
    /// Some slack fell below `-1e-6`; trials after the first such one were
    /// discarded.
    MathematicalViolation,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub campaign: String,
    pub trials: usize,
    pub checks: usize,
    pub status: ReportStatus,
    pub min_slack: f64,
    pub violations: Vec<Violation>,
    /// Counts of reported-but-not-asserted phenomena.
    pub observations: BTreeMap<String, u64>,
    pub config: CampaignConfig,
    pub elapsed_seconds: f64,
}

impl VerificationReport {
    pub fn is_clean(&self) -> bool {
        self.status == ReportStatus::Clean
    }
}

/// Accumulates the checks of one trial.
struct TrialLog {
    trial: usize,
    digest: String,
    checks: usize,
    min_slack: f64,
    worst: f64,
    violations: Vec<Violation>,
    observations: BTreeMap<String, u64>,
}

impl TrialLog {
    fn new(trial: usize, digest: String) -> Self {
        Self {
            trial,
            digest,
            checks: 0,
            min_slack: f64::INFINITY,
            worst: f64::INFINITY,
            violations: Vec::new(),
            observations: BTreeMap::new(),
        }
    }

    fn check(&mut self, property: &str, detail: &str, lhs: f64, rhs: f64, tolerance: f64) {
        self.checks += 1;
        // finite sentinel keeps reports JSON-serializable
        let slack = if lhs.is_nan() || rhs.is_nan() {
            -f64::MAX
        } else {
            (rhs - lhs).max(-f64::MAX)
        };
        self.min_slack = self.min_slack.min(slack);
        self.worst = self.worst.min(slack + tolerance);
        if slack < -tolerance {
            self.violations.push(Violation {
                trial: self.trial,
                property: property.to_string(),
                inputs_digest: if detail.is_empty() {
                    self.digest.clone()
                } else {
                    format!("{},{detail}", self.digest)
                },
                lhs,
                rhs,
                slack,
                tolerance,
            });
        }
    }

    fn equal(&mut self, property: &str, detail: &str, a: f64, b: f64, tolerance: f64) {
        self.check(property, detail, (a - b).abs(), 0.0, tolerance);
    }

    fn observe(&mut self, key: &str) {
        *self.observations.entry(key.to_string()).or_default() += 1;
    }

    fn fail(&mut self, property: &str, err: &Error) {
        self.check(property, &format!("error={err}"), f64::MAX, 0.0, 0.0);
    }
}

fn run_campaign<F>(name: &str, config: &CampaignConfig, trial_fn: F) -> Result<VerificationReport>
where
    F: Fn(usize, &mut StateRng, &mut TrialLog) -> Result<()> + Sync,
{
    config.validate()?;
    let started = Instant::now();
    let logs: Vec<TrialLog> = (0..config.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = stream_rng(config.seed, trial as u64);
            let mut log = TrialLog::new(trial, format!("seed={},trial={trial}", config.seed));
            if let Err(err) = trial_fn(trial, &mut rng, &mut log) {
                log.fail("trial_error", &err);
            }
            log
        })
        .collect();

    let mut report = VerificationReport {
        campaign: name.to_string(),
        trials: 0,
        checks: 0,
        status: ReportStatus::Clean,
        min_slack: f64::INFINITY,
        violations: Vec::new(),
        observations: BTreeMap::new(),
        config: config.clone(),
        elapsed_seconds: 0.0,
    };
    for log in logs {
        report.trials += 1;
        report.checks += log.checks;
        report.min_slack = report.min_slack.min(log.min_slack);
        report.violations.extend(log.violations);
        for (k, v) in log.observations {
            *report.observations.entry(k).or_default() += v;
        }
        if log.worst < -MATHEMATICAL_VIOLATION {
            report.status = ReportStatus::MathematicalViolation;
            break;
        }
    }
    if report.status == ReportStatus::Clean && !report.violations.is_empty() {
        report.status = ReportStatus::Violations;
    }
    report.elapsed_seconds = started.elapsed().as_secs_f64();
    Ok(report)
}

fn pick<T: Copy, R: Rng + ?Sized>(items: &[T], rng: &mut R) -> T {
    items[rng.random_range(0..items.len())]
}

/// Corpus stratum of a trial: 40% Gibbs, 20% power law, 20% random density,
/// 20% non-positive or non-Hermitian regime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Stratum {
    Gibbs,
    PowerLaw,
    Density,
    /// Random density `A0` against non-Hermitian estimates.
    NonHermitianEstimate,
    /// Normal, non-Hermitian `A0` with complex eigenvalues.
    NormalOperator,
}

impl Stratum {
    fn of(trial: usize) -> Self {
        match trial % 10 {
            0..=3 => Self::Gibbs,
            4 | 5 => Self::PowerLaw,
            6 | 7 => Self::Density,
            8 => Self::NonHermitianEstimate,
            _ => Self::NormalOperator,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Self::Gibbs => "gibbs",
            Self::PowerLaw => "power_law",
            Self::Density => "density",
            Self::NonHermitianEstimate => "non_hermitian_estimate",
            Self::NormalOperator => "normal_operator",
        }
    }
}

/// How the estimate `A` relates to `A0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum EstimateKind {
    Matched,
    Independent,
    Negated,
}

fn estimate_kind(trial: usize) -> EstimateKind {
    if trial % 100 == 99 {
        EstimateKind::Negated
    } else if (trial / 10).is_multiple_of(2) {
        EstimateKind::Matched
    } else {
        EstimateKind::Independent
    }
}

/// Checks the trace-norm bound for one `(A0, A)` pair at every rank
/// `0..=dim` and every `p` in the grid.
fn check_theorem1_pair(
    a0: &Spectrum,
    a: &ComplexMatrix,
    p_grid: &[PExponent],
    tolerance: f64,
    log: &mut TrialLog,
) -> Result<()> {
    let a0_matrix = a0.to_matrix();
    let values = singular_values(&(&a0_matrix - a))?;
    let true_error = schatten_norm_of_values(&values, PExponent::ONE);
    let tails = suffix_sums(&a0.nonzero_moduli());
    for &p in p_grid {
        let p_error = schatten_norm_of_values(&values, p);
        let exponent = 1.0 - p.reciprocal();
        for rank in 0..=a0.dim() {
            let tail = tails.get(rank).copied().unwrap_or(0.0);
            let bound = 3.0 * (rank as f64).powf(exponent) * p_error + 2.0 * tail;
            log.check(
                "theorem1",
                &format!("p={p},N={rank}"),
                true_error,
                bound,
                tolerance,
            );
        }
    }
    Ok(())
}

/// Trace-norm bound over a stratified corpus of `(A0, A)` pairs.
pub fn verify_theorem1(config: &CampaignConfig) -> Result<VerificationReport> {
    for p in &config.p_grid {
        p.require_interior()?;
    }
    let tolerance = config.tolerance("inequality");
    run_campaign("theorem1", config, |trial, rng, log| {
        let dim = pick(&config.dims, rng);
        let stratum = Stratum::of(trial);
        let kind = estimate_kind(trial);
        log.digest = format!("{},dim={dim},stratum={}", log.digest, stratum.name());

        let a0: Spectrum = match stratum {
            Stratum::Gibbs => {
                let beta = rng.random_range(0.1..3.0);
                gibbs_state(beta, dim, Some(rng.random()))?.spectrum
            }
            Stratum::PowerLaw => {
                let alpha = rng.random_range(1.05..3.0);
                power_law_state(alpha, dim, Some(rng.random()))?.spectrum
            }
            Stratum::Density | Stratum::NonHermitianEstimate => {
                random_density_matrix_from(dim, rng)?.spectrum
            }
            Stratum::NormalOperator => random_normal_spectrum(dim, rng)?,
        };
        let a0_matrix = a0.to_matrix();
        let hermitian_estimate = match stratum {
            Stratum::NonHermitianEstimate | Stratum::NormalOperator => false,
            _ => rng.random_bool(0.5),
        };
        let a = match kind {
            EstimateKind::Negated => -&a0_matrix,
            EstimateKind::Matched => {
                let magnitude = 10f64.powf(-rng.random_range(0.0..5.0));
                perturb_renormalized_from(
                    &a0_matrix,
                    magnitude,
                    hermitian_estimate,
                    PExponent::TWO,
                    rng,
                )?
            }
            EstimateKind::Independent => {
                if hermitian_estimate && rng.random_bool(0.5) {
                    random_density_matrix_from(dim, rng)?.matrix
                } else {
                    random_trace_one_operator_from(dim, hermitian_estimate, rng)?
                }
            }
        };
        check_theorem1_pair(&a0, &a, &config.p_grid, tolerance, log)
    })
}

fn random_rank_partition<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<usize> {
    let mut remaining = dim;
    let mut ranks = Vec::new();
    while remaining > 0 {
        let r = rng.random_range(1..=remaining);
        ranks.push(r);
        remaining -= r;
    }
    // sub-partition: drop trailing blocks
    if ranks.len() > 1 && rng.random_bool(0.5) {
        let keep = rng.random_range(1..ranks.len());
        ranks.truncate(keep);
    }
    ranks
}

/// Compression, pinching and splitting identities over random operators and
/// projection families.
pub fn verify_lemmas(config: &CampaignConfig) -> Result<VerificationReport> {
    let inequality = config.tolerance("inequality");
    let equality = config.tolerance("equality_relative");
    run_campaign("lemmas", config, |trial, rng, log| {
        let dim = pick(&config.dims, rng);
        let hermitian = trial % 2 == 0;
        log.digest = format!("{},dim={dim},hermitian={hermitian}", log.digest);
        let a = random_trace_one_operator_from(dim, hermitian, rng)?;
        let a_norm = schatten_norm(&a, PExponent::ONE)?;

        let rank = rng.random_range(0..=dim);
        let p = random_projection(dim, rank, rng);
        let blocks = block_sum_check(&a, &p)?;
        let detail = format!("rank={rank}");
        log.equal(
            "lemma4_equality",
            &detail,
            blocks.separate,
            blocks.joint,
            equality * a_norm,
        );

        let ranks = random_rank_partition(dim, rng);
        let family = random_orthogonal_family(dim, &ranks, rng)?;
        let pinched = schatten_norm(&pinch(&a, &family)?, PExponent::ONE)?;
        log.check(
            "lemma5_contraction",
            &format!("ranks={ranks:?}"),
            pinched,
            a_norm,
            inequality,
        );

        let split = split_bound_check(&a, &p)?;
        log.check(
            "lemma6_inequality",
            &detail,
            split.lhs,
            split.rhs,
            inequality,
        );
        if split.rhs - split.lhs > inequality {
            log.observe("lemma6_strict");
        }

        // operator commuting with P: P X P + Q Y Q
        let q = p.complement();
        let x = ginibre(dim, rng);
        let y = ginibre(dim, rng);
        let commuting = &compress(&p, &x)? + &compress(&q, &y)?;
        let c_norm = schatten_norm(&commuting, PExponent::ONE)?;
        if c_norm > 0.0 {
            let commuting = commuting.scale_real(1.0 / c_norm);
            let split = split_bound_check(&commuting, &p)?;
            log.check(
                "lemma6_commutes",
                &detail,
                if split.commuting { 0.0 } else { 1.0 },
                0.0,
                0.0,
            );
            log.equal(
                "lemma6_equality",
                &detail,
                split.lhs,
                split.rhs,
                equality * split.rhs,
            );
        }
        Ok(())
    })
}

/// Monotonicity, triangle, Hölder, unitary invariance and projection norms.
pub fn verify_norm_relations(config: &CampaignConfig) -> Result<VerificationReport> {
    let inequality = config.tolerance("inequality");
    let unitary_tol = config.tolerance("unitary_invariance");
    let projection_tol = config.tolerance("projection_norm");
    let rank_one_tol = config.tolerance("rank_one");
    let grid = config.p_grid.clone();
    run_campaign("norm_relations", config, |_trial, rng, log| {
        let dim = pick(&config.dims, rng);
        log.digest = format!("{},dim={dim}", log.digest);
        let unit = |m: ComplexMatrix| {
            let f = m.frobenius_norm();
            m.scale_real(1.0 / f)
        };
        let m = unit(ginibre(dim, rng));
        let n = unit(ginibre(dim, rng));
        let m_norms = schatten_norms(&m, &grid)?;
        let n_norms = schatten_norms(&n, &grid)?;

        for (i, &p) in grid.iter().enumerate() {
            for (j, &q) in grid.iter().enumerate() {
                if p < q {
                    log.check(
                        "monotonicity",
                        &format!("p={p},q={q}"),
                        m_norms[j],
                        m_norms[i],
                        inequality,
                    );
                }
            }
        }

        let sum_norms = schatten_norms(&(&m + &n), &grid)?;
        for (i, &p) in grid.iter().enumerate() {
            log.check(
                "triangle",
                &format!("p={p}"),
                sum_norms[i],
                m_norms[i] + n_norms[i],
                inequality,
            );
        }

        let product = schatten_norm(&(&m * &n), PExponent::ONE)?;
        for &p in &grid {
            let rhs = schatten_norm(&m, p)? * schatten_norm(&n, p.conjugate())?;
            log.check("holder", &format!("p={p}"), product, rhs, inequality);
        }

        let u = random_unitary(dim, rng);
        let v = random_unitary(dim, rng);
        let rotated = schatten_norms(&(&(&u * &m) * &v), &grid)?;
        for (i, &p) in grid.iter().enumerate() {
            log.equal(
                "unitary_invariance",
                &format!("p={p}"),
                rotated[i],
                m_norms[i],
                unitary_tol,
            );
        }

        let rank = rng.random_range(1..=dim);
        let proj = random_projection(dim, rank, rng);
        for &p in &grid {
            let q = p.conjugate();
            let expected = (rank as f64).powf(q.reciprocal());
            let got = schatten_norm(proj.matrix(), q)?;
            log.equal(
                "projection_norm",
                &format!("rank={rank},q={q}"),
                got,
                expected,
                projection_tol,
            );
        }

        let left = ginibre(dim, rng);
        let right = ginibre(dim, rng);
        let rank_one = ComplexMatrix::from_fn(dim, |r, c| left.get(r, 0) * right.get(c, 0).conj());
        let rank_one = unit(rank_one);
        let op = schatten_norm(&rank_one, PExponent::INFINITY)?;
        for &p in &grid {
            let got = schatten_norm(&rank_one, p)?;
            log.equal("rank_one", &format!("p={p}"), got, op, rank_one_tol);
        }
        Ok(())
    })
}

/// One row of a sweep. For convergence sweeps `swept` is the perturbation
/// magnitude; for `N(eps)` sweeps it is `eps`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub swept: f64,
    pub n: u128,
    pub truncation_term: f64,
    pub tail_term: f64,
    pub bound: f64,
    pub p_error: f64,
    pub true_error: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    /// `"magnitude"` or `"epsilon"`.
    pub variable: String,
    pub rows: Vec<SweepRow>,
}

fn check_grid(values: &[f64], what: &str) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidArgument(format!("{what} grid is empty")));
    }
    if values.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
        return Err(Error::InvalidArgument(format!(
            "{what} values must be positive"
        )));
    }
    let increasing = values.windows(2).all(|w| w[0] < w[1]);
    let decreasing = values.windows(2).all(|w| w[0] > w[1]);
    if !(increasing || decreasing) {
        return Err(Error::InvalidArgument(format!(
            "{what} grid must be strictly monotone"
        )));
    }
    Ok(())
}

/// Certifies `A = (A0 + m E)/||A0 + m E||_1` for each magnitude `m`, with one
/// fixed noise direction `E` drawn from `seed`.
pub fn sweep_corollary1(
    a0: &GeneratedState,
    p: PExponent,
    magnitudes: &[f64],
    seed: u64,
    hermitian: bool,
) -> Result<SweepTable> {
    p.require_interior()?;
    check_grid(magnitudes, "magnitude")?;
    let rows = magnitudes
        .iter()
        .map(|&m| {
            let a = crate::state_gen::perturb_renormalized(&a0.matrix, m, seed, hermitian)?;
            let exact = certify_exact(&a0.spectrum, &a, p)?;
            Ok(SweepRow {
                swept: m,
                n: exact.certificate.n as u128,
                truncation_term: exact.certificate.truncation_term,
                tail_term: exact.certificate.tail_term,
                bound: exact.certificate.bound,
                p_error: exact.p_error,
                true_error: Some(exact.true_1_error),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable {
        variable: "magnitude".into(),
        rows,
    })
}

/// `(eps, N(eps), (3 N(eps)^{1/q} + 2) eps)` along an epsilon grid.
pub fn sweep_corollary2(model: &DecayModel, p: PExponent, eps_grid: &[f64]) -> Result<SweepTable> {
    p.require_interior()?;
    check_grid(eps_grid, "epsilon")?;
    let rows = eps_grid
        .iter()
        .map(|&eps| {
            let n = n_epsilon(model, eps)?;
            let bound = corollary2_bound(eps, p, model)?;
            Ok(SweepRow {
                swept: eps,
                n,
                truncation_term: bound - 2.0 * eps,
                tail_term: 2.0 * eps,
                bound,
                p_error: eps,
                true_error: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable {
        variable: "epsilon".into(),
        rows,
    })
}

/// `10^{-1}, ..., 10^{-k}`.
pub fn decades(k: u32) -> Vec<f64> {
    (1..=k as i32).map(|e| 10f64.powi(-e)).collect()
}

/// True when the second half of `values` (rounded up) is strictly
/// decreasing.
pub fn eventually_decreasing(values: &[f64]) -> bool {
    let start = values.len() / 2;
    values.len() >= 2
        && values[start.min(values.len() - 2)..]
            .windows(2)
            .all(|w| w[1] < w[0])
}

/// True when the second half of `values` (rounded up) is strictly
/// increasing.
pub fn eventually_increasing(values: &[f64]) -> bool {
    let start = values.len() / 2;
    values.len() >= 2
        && values[start.min(values.len() - 2)..]
            .windows(2)
            .all(|w| w[1] > w[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(mut config: CampaignConfig, trials: usize) -> CampaignConfig {
        config.trials = trials;
        config.dims = vec![2, 3, 5];
        config
    }

    #[test]
    fn identical_operators_have_slack_twice_the_tail() {
        let s = gibbs_state(1.0, 4, Some(1)).unwrap();
        let mut log = TrialLog::new(0, String::new());
        check_theorem1_pair(
            &s.spectrum,
            &s.spectrum.to_matrix(),
            &interior_grid(),
            1e-9,
            &mut log,
        )
        .unwrap();
        assert!(log.violations.is_empty());
        assert!(log.min_slack >= -1e-12);
        // at N = dim the tail vanishes and so does the slack
        assert!(log.min_slack.abs() < 1e-12);
    }

    #[test]
    fn negated_estimate_saturates_at_rank_zero() {
        let s = random_density_matrix_from(4, &mut stream_rng(2, 0)).unwrap();
        let a = -&s.spectrum.to_matrix();
        let mut log = TrialLog::new(0, String::new());
        check_theorem1_pair(&s.spectrum, &a, &[PExponent::TWO], 1e-9, &mut log).unwrap();
        assert!(log.violations.is_empty());
        assert!(log.min_slack >= -1e-12);
        assert!(log.min_slack.abs() < 1e-12);
    }

    #[test]
    fn small_campaigns_are_clean_and_deterministic() {
        let t = small(CampaignConfig::theorem1_default(), 40);
        let a = verify_theorem1(&t).unwrap();
        let b = verify_theorem1(&t).unwrap();
        assert!(a.is_clean(), "{:?}", a.violations);
        assert_eq!(a.min_slack, b.min_slack);
        assert_eq!(a.checks, b.checks);

        let l = verify_lemmas(&small(CampaignConfig::lemmas_default(), 30)).unwrap();
        assert!(l.is_clean(), "{:?}", l.violations);
        let n = verify_norm_relations(&small(CampaignConfig::norms_default(), 20)).unwrap();
        assert!(n.is_clean(), "{:?}", n.violations);
    }

    #[test]
    fn violation_bookkeeping() {
        let mut log = TrialLog::new(3, "seed=0,trial=3".into());
        log.check("x", "", 1.0, 1.0 - 1e-10, 1e-9);
        assert!(log.violations.is_empty());
        log.check("x", "N=2", 1.0, 0.9, 1e-9);
        assert_eq!(log.violations.len(), 1);
        assert_eq!(log.violations[0].inputs_digest, "seed=0,trial=3,N=2");
        assert!((log.min_slack + 0.1).abs() < 1e-12);
        assert!(log.worst < -MATHEMATICAL_VIOLATION);
    }

    #[test]
    fn invalid_configs() {
        let mut c = CampaignConfig::theorem1_default();
        c.trials = 0;
        assert!(verify_theorem1(&c).is_err());
        let mut c = CampaignConfig::theorem1_default();
        c.p_grid = vec![PExponent::ONE];
        assert!(verify_theorem1(&c).is_err());
    }

    #[test]
    fn sweep_grid_validation() {
        let g = DecayModel::gibbs(1.0).unwrap();
        assert!(sweep_corollary2(&g, PExponent::TWO, &[]).is_err());
        assert!(sweep_corollary2(&g, PExponent::TWO, &[0.1, 0.1]).is_err());
        assert!(sweep_corollary2(&g, PExponent::TWO, &[0.1, 0.3, 0.2]).is_err());
    }

    #[test]
    fn eps_above_total_mass() {
        let g = DecayModel::gibbs(1.0).unwrap();
        let t = sweep_corollary2(&g, PExponent::TWO, &[3.0, 2.0]).unwrap();
        assert_eq!(t.rows[0].n, 0);
        assert_eq!(t.rows[0].bound, 6.0);
    }

    #[test]
    fn monotone_tails() {
        assert!(eventually_decreasing(&[1.0, 5.0, 3.0, 2.0]));
        assert!(!eventually_decreasing(&[1.0, 5.0, 3.0, 4.0]));
        assert!(eventually_increasing(&[9.0, 1.0, 2.0, 3.0]));
        assert!(!eventually_increasing(&[1.0]));
    }
}
