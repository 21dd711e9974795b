//! Argument definitions and command implementations.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use schatten_core::bound::default_rank_limit;
use schatten_core::state_gen::{
    gibbs_state, perturb_renormalized, power_law_state, random_density_matrix,
};
use schatten_core::verify::{self, decades, sweep_corollary1, sweep_corollary2, CampaignConfig};
use schatten_core::{
    certify_exact, corollary2_bound, hermitian_eig, n_epsilon, normal_eig, optimal_certificate,
    tolerance, Certificate, ComplexMatrix, DecayModel, GeneratedState, PExponent, Spectrum,
    VerificationReport,
};
use serde::Serialize;

use crate::csv_table;
use crate::error::CliError;
use crate::matrix_file::{self, Metadata};

/// Relative `--out` paths are resolved against this directory when set.
pub const OUT_DIR_ENV: &str = "SCHATTEN_OUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "schatten",
    version,
    about = "Schatten norms and certified trace-norm error bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound ||A0 - A||_1 from a p-norm error and spectral decay.
    Certify(CertifyArgs),
    /// Run verification campaigns and write a JSON report.
    Verify(VerifyArgs),
    /// Write a state (or a perturbed estimate of it) as a matrix file.
    Generate(GenerateArgs),
    /// Tabulate bounds along a perturbation or epsilon grid as CSV.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// Exact state (normal, unit trace norm).
    #[arg(long, value_name = "FILE", requires = "a")]
    pub a0: Option<PathBuf>,
    /// Estimate (unit trace norm).
    #[arg(long, value_name = "FILE", requires = "a0")]
    pub a: Option<PathBuf>,
    #[arg(long, value_name = "P")]
    pub p: String,
    #[arg(long, value_name = "E", conflicts_with = "a0")]
    pub p_error: Option<f64>,
    /// `powerlaw C ALPHA`, `exponential C BETA` (C may be `auto`) or `empirical FILE`.
    #[arg(long, num_args = 2..=3, value_names = ["KIND", "ARGS"], conflicts_with = "a0")]
    pub model: Option<Vec<String>>,
    /// Largest truncation rank searched.
    #[arg(long, value_name = "N")]
    pub n_max: Option<u64>,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Campaign {
    Theorem1,
    Lemmas,
    Norms,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub campaign: Campaign,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated dimensions.
    #[arg(long, value_name = "LIST")]
    pub dims: Option<String>,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StateKind {
    Gibbs,
    Powerlaw,
    Density,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    #[arg(long, value_enum)]
    pub state: Option<StateKind>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub dim: Option<usize>,
    /// Basis seed. Without it Gibbs and power-law states are diagonal.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub state: StateArgs,
    /// Write `(A0 + m E)/||A0 + m E||_1` instead of `A0`.
    #[arg(long, value_name = "M")]
    pub perturb: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub noise_seed: u64,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepKind {
    /// Certify seeded perturbations of a generated state.
    Corollary1,
    /// `(3 N(eps)^{1/q} + 2) eps` over an epsilon grid.
    Corollary2,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub kind: SweepKind,
    #[arg(long, value_name = "P", default_value = "2")]
    pub p: String,
    #[arg(long, num_args = 2..=3, value_names = ["KIND", "ARGS"])]
    pub model: Option<Vec<String>>,
    /// Comma-separated epsilon grid.
    #[arg(long, value_name = "LIST", conflicts_with = "decades")]
    pub eps: Option<String>,
    /// Comma-separated perturbation magnitudes.
    #[arg(long, value_name = "LIST", conflicts_with = "decades")]
    pub magnitudes: Option<String>,
    /// Grid 1e-1, 1e-2, ..., 1e-K.
    #[arg(long, value_name = "K")]
    pub decades: Option<u32>,
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, default_value_t = 0)]
    pub noise_seed: u64,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Certify(args) => certify(&args),
        Command::Verify(args) => verify(&args),
        Command::Generate(args) => generate(&args),
        Command::Sweep(args) => sweep(&args),
    }
}

fn resolve_out(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() && !dir.is_empty() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            let path = resolve_out(path);
            fs::write(&path, text).map_err(|e| CliError::io(&path, e))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io(format!("stdout: {e}")))
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("output serializes");
    text.push('\n');
    text
}

fn parse_p(text: &str) -> Result<PExponent, CliError> {
    Ok(text.parse::<PExponent>()?)
}

fn parse_number(text: &str, what: &str) -> Result<f64, CliError> {
    text.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{what}: not a number: {text:?}")))
}

fn parse_list(text: &str, what: &str) -> Result<Vec<f64>, CliError> {
    let items: Vec<&str> = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if items.is_empty() {
        return Err(CliError::Usage(format!("{what} grid is empty")));
    }
    items.iter().map(|s| parse_number(s, what)).collect()
}

/// Spectrum of a normal matrix read from a file.
fn load_spectrum(matrix: &ComplexMatrix) -> Result<Spectrum, CliError> {
    if matrix.is_hermitian(tolerance::HERMITIAN) {
        return Ok(hermitian_eig(matrix)?);
    }
    if !schatten_core::is_normal(matrix, tolerance::HERMITIAN) {
        return Err(CliError::Validation(
            "A0 is not normal within tolerance".into(),
        ));
    }
    Ok(normal_eig(matrix, tolerance::HERMITIAN)?)
}

/// Moduli from a whitespace/comma separated list (`#` starts a comment) or
/// from the eigenvalues of a matrix file.
fn load_empirical(path: &Path) -> Result<DecayModel, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut moduli = if text.trim_start().starts_with('{') {
        let (matrix, _) = matrix_file::from_str(&text)?;
        load_spectrum(&matrix)?.moduli()
    } else {
        text.lines()
            .map(|line| line.split('#').next().unwrap_or(""))
            .flat_map(|line| line.split([',', ' ', '\t']))
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<f64>().map(f64::abs).map_err(|_| {
                    CliError::Parse(format!("{}: not a number: {s:?}", path.display()))
                })
            })
            .collect::<Result<Vec<f64>, CliError>>()?
    };
    moduli.sort_by(|a, b| b.total_cmp(a));
    Ok(DecayModel::empirical(moduli)?)
}

fn parse_model(words: &[String]) -> Result<DecayModel, CliError> {
    let auto = |s: &str| s.eq_ignore_ascii_case("auto");
    match words {
        [kind, c, alpha] if kind == "powerlaw" => {
            let alpha = parse_number(alpha, "alpha")?;
            Ok(if auto(c) {
                DecayModel::normalized_power_law(alpha)?
            } else {
                DecayModel::power_law(parse_number(c, "C")?, alpha)?
            })
        }
        [kind, c, beta] if kind == "exponential" => {
            let beta = parse_number(beta, "beta")?;
            Ok(if auto(c) {
                DecayModel::gibbs(beta)?
            } else {
                DecayModel::exponential(parse_number(c, "C")?, beta)?
            })
        }
        [kind, file] if kind == "empirical" => load_empirical(Path::new(file)),
        _ => Err(CliError::Usage(
            "--model expects `powerlaw C ALPHA`, `exponential C BETA` or `empirical FILE`".into(),
        )),
    }
}

#[derive(Serialize)]
struct CertifyOutput {
    mode: &'static str,
    certificate: Certificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    true_1_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_epsilon: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    corollary2_bound: Option<f64>,
}

pub fn certify(args: &CertifyArgs) -> Result<(), CliError> {
    let p = parse_p(&args.p)?;
    p.require_interior()?;
    let output = match (&args.a0, &args.a) {
        (Some(a0_path), Some(a_path)) => {
            let (a0, _) = matrix_file::read(a0_path)?;
            let (a, _) = matrix_file::read(a_path)?;
            let spectrum = load_spectrum(&a0)?;
            let exact = certify_exact(&spectrum, &a, p)?;
            CertifyOutput {
                mode: "exact",
                certificate: exact.certificate,
                true_1_error: Some(exact.true_1_error),
                n_epsilon: None,
                corollary2_bound: None,
            }
        }
        _ => {
            let p_error = args
                .p_error
                .ok_or_else(|| CliError::Usage("model mode needs --p-error".into()))?;
            let words = args
                .model
                .as_deref()
                .ok_or_else(|| CliError::Usage("need --a0/--a or --p-error/--model".into()))?;
            let model = parse_model(words)?;
            let limit = match args.n_max {
                Some(n) => n,
                None => default_rank_limit(&model, p_error)?,
            };
            let certificate = optimal_certificate(p_error, p, &model, limit)?;
            let (n_eps, cor2) = if p_error > 0.0 {
                (
                    Some(n_epsilon(&model, p_error)?.to_string()),
                    Some(corollary2_bound(p_error, p, &model)?),
                )
            } else {
                (None, None)
            };
            CertifyOutput {
                mode: "model",
                certificate,
                true_1_error: None,
                n_epsilon: n_eps,
                corollary2_bound: cor2,
            }
        }
    };
    emit(args.out.as_deref(), &to_json(&output))
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    reports: &'a [VerificationReport],
}

pub fn verify(args: &VerifyArgs) -> Result<(), CliError> {
    let dims = args
        .dims
        .as_deref()
        .map(|text| {
            text.split(',')
                .map(|s| {
                    s.trim()
                        .parse::<usize>()
                        .map_err(|_| CliError::Usage(format!("dims: not an integer: {s:?}")))
                })
                .collect::<Result<Vec<usize>, CliError>>()
        })
        .transpose()?;
    let configure = |mut config: CampaignConfig| {
        config.seed = args.seed;
        if let Some(trials) = args.trials {
            config.trials = trials;
        }
        if let Some(dims) = &dims {
            config.dims = dims.clone();
        }
        config
    };
    let mut reports = Vec::new();
    if matches!(args.campaign, Campaign::Theorem1 | Campaign::All) {
        reports.push(verify::verify_theorem1(&configure(
            CampaignConfig::theorem1_default(),
        ))?);
    }
    if matches!(args.campaign, Campaign::Lemmas | Campaign::All) {
        reports.push(verify::verify_lemmas(&configure(
            CampaignConfig::lemmas_default(),
        ))?);
    }
    if matches!(args.campaign, Campaign::Norms | Campaign::All) {
        reports.push(verify::verify_norm_relations(&configure(
            CampaignConfig::norms_default(),
        ))?);
    }
    emit(
        args.out.as_deref(),
        &to_json(&VerifyOutput { reports: &reports }),
    )?;
    for r in &reports {
        eprintln!(
            "{}: {:?}, {} trials, {} checks, min slack {:e}",
            r.campaign, r.status, r.trials, r.checks, r.min_slack
        );
    }
    let dirty: Vec<&str> = reports
        .iter()
        .filter(|r| !r.is_clean())
        .map(|r| r.campaign.as_str())
        .collect();
    if dirty.is_empty() {
        Ok(())
    } else {
        Err(CliError::Violations(format!(
            "campaigns with violations: {}",
            dirty.join(",")
        )))
    }
}

fn build_state(args: &StateArgs) -> Result<(GeneratedState, Metadata), CliError> {
    let kind = args
        .state
        .ok_or_else(|| CliError::Usage("--state is required".into()))?;
    let dim = args
        .dim
        .ok_or_else(|| CliError::Usage("--dim is required".into()))?;
    let (state, name) = match kind {
        StateKind::Gibbs => {
            let beta = args
                .beta
                .ok_or_else(|| CliError::Usage("gibbs needs --beta".into()))?;
            (gibbs_state(beta, dim, args.seed)?, "gibbs")
        }
        StateKind::Powerlaw => {
            let alpha = args
                .alpha
                .ok_or_else(|| CliError::Usage("powerlaw needs --alpha".into()))?;
            (power_law_state(alpha, dim, args.seed)?, "powerlaw")
        }
        StateKind::Density => (
            random_density_matrix(dim, args.seed.unwrap_or(0))?,
            "density",
        ),
    };
    let metadata = Metadata {
        name: Some(name.into()),
        model: state.model.clone(),
        seed: args.seed,
        truncation_remainder: Some(state.truncation_remainder),
    };
    Ok((state, metadata))
}

pub fn generate(args: &GenerateArgs) -> Result<(), CliError> {
    let (state, mut metadata) = build_state(&args.state)?;
    let matrix = match args.perturb {
        Some(m) => {
            metadata.name = metadata
                .name
                .map(|n| format!("{n}+perturbed({m:e},{})", args.noise_seed));
            perturb_renormalized(&state.matrix, m, args.noise_seed, true)?
        }
        None => state.matrix,
    };
    emit(
        args.out.as_deref(),
        &matrix_file::to_string(&matrix, &metadata),
    )
}

pub fn sweep(args: &SweepArgs) -> Result<(), CliError> {
    let p = parse_p(&args.p)?;
    p.require_interior()?;
    let grid = |list: &Option<String>, what: &str| -> Result<Vec<f64>, CliError> {
        match (list, args.decades) {
            (Some(text), _) => parse_list(text, what),
            (None, Some(0)) => Err(CliError::Usage(format!("{what} grid is empty"))),
            (None, Some(k)) => Ok(decades(k)),
            (None, None) => Err(CliError::Usage(format!("{what} grid is empty"))),
        }
    };
    let table = match args.kind {
        SweepKind::Corollary1 => {
            let magnitudes = grid(&args.magnitudes, "magnitude")?;
            let (state, _) = build_state(&args.state)?;
            sweep_corollary1(&state, p, &magnitudes, args.noise_seed, true)?
        }
        SweepKind::Corollary2 => {
            let eps = grid(&args.eps, "epsilon")?;
            let words = args
                .model
                .as_deref()
                .ok_or_else(|| CliError::Usage("corollary2 sweep needs --model".into()))?;
            sweep_corollary2(&parse_model(words)?, p, &eps)?
        }
    };
    emit(args.out.as_deref(), &csv_table::to_string(&table)?)
}
