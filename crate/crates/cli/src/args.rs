use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "ssy", version, about = "Closure constants for SSY-type curvature estimates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// All constants at one point, optionally with the CMC local estimate.
    Eval(EvalArgs),
    /// Constants over a grid of points, as CSV.
    Sweep(SweepArgs),
    /// Young versus Hölder closure over a grid, with crossover brackets.
    Compare(SweepArgs),
    /// Interval certificate for a named claim over a parameter box.
    Certify(CertifyArgs),
    /// Minimize a closure constant over its free absorption parameters.
    Optimize(OptimizeArgs),
    /// CMC constants, local estimate and threshold radius.
    Cmc(EvalArgs),
    /// Admissible Bernstein ranges per dimension.
    Bernstein(BernsteinArgs),
    /// Compare binary64 constants with extended-precision references.
    OracleCheck(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Structured,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Dimension: single value, list `2,3,5` or inclusive range `2..12`.
    #[arg(long)]
    pub n: String,
    /// Exponent: single value, list, or range `a..b` (sampled with --steps).
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long = "q-min", allow_hyphen_values = true)]
    pub q_min: Option<f64>,
    #[arg(long = "q-max", allow_hyphen_values = true)]
    pub q_max: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub q: f64,
    /// Mean curvature.
    #[arg(long = "H", allow_hyphen_values = true)]
    pub h: Option<f64>,
    /// Ball radius.
    #[arg(long = "R")]
    pub r: Option<f64>,
    /// Inner-ball fraction in (0, 1).
    #[arg(long)]
    pub theta: Option<f64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// holder-beats-young, gap-positive, f-monotone, f-below-one or ratio-below-f.
    pub claim: String,
    /// Dimensions; not needed for claims that depend on q only.
    #[arg(long)]
    pub n: Option<String>,
    /// Closed interval `a..b`.
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long = "q-min")]
    pub q_min: Option<f64>,
    #[arg(long = "q-max")]
    pub q_max: Option<f64>,
    #[arg(long = "max-depth", default_value_t = ssy_closure::certify::DEFAULT_MAX_DEPTH)]
    pub max_depth: u32,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    /// young, holder or cmc.
    #[arg(long, default_value = "young")]
    pub target: String,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Weight of calC2 in the CMC objective.
    #[arg(long, default_value_t = 0.0)]
    pub weight: f64,
    /// Also run the brute-force zooming grid and fail when the two minima
    /// differ by more than 1e-9 relative.
    #[arg(long = "check-grid")]
    pub check_grid: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct BernsteinArgs {
    #[arg(long, default_value = "2..12")]
    pub n: String,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, default_value = "2..12")]
    pub n: String,
    /// Regular points per dimension over [0, 0.999 sqrt(2/n)].
    #[arg(long, default_value_t = 41)]
    pub steps: usize,
    /// Exponents k of the near-boundary points sqrt(2/n)(1 - 10^-k);
    /// `none` for no such points.
    #[arg(long = "near-boundary", default_value = "8..12")]
    pub near_boundary: String,
    #[command(flatten)]
    pub output: Output,
}

/// Parses `3`, `2,3,5` or the inclusive range `2..12`.
pub fn parse_n_list(s: &str) -> Result<Vec<u32>, CliError> {
    parse_int_list(s)?
        .into_iter()
        .map(|v| u32::try_from(v).map_err(|_| CliError::Usage(format!("invalid dimension {v}"))))
        .collect()
}

pub fn parse_int_list(s: &str) -> Result<Vec<i64>, CliError> {
    let bad = || CliError::Usage(format!("cannot parse integer list '{s}'"));
    if let Some((a, b)) = s.split_once("..") {
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let b: i64 = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(CliError::Usage(format!("empty range '{s}'")));
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|v| v.trim().parse().map_err(|_| bad())).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum QSpec {
    Values(Vec<f64>),
    Range(f64, f64),
}

pub fn parse_q(s: &str) -> Result<QSpec, CliError> {
    let num = |v: &str| {
        v.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("cannot parse number '{v}' in '{s}'")))
    };
    if let Some((a, b)) = s.split_once("..") {
        return Ok(QSpec::Range(num(a)?, num(b)?));
    }
    Ok(QSpec::Values(s.split(',').map(num).collect::<Result<_, _>>()?))
}

/// `q_k = q_min + k (q_max - q_min) / (steps - 1)`, one fused operation per
/// point.
pub fn linear_grid(q_min: f64, q_max: f64, steps: usize) -> Result<Vec<f64>, CliError> {
    if steps < 2 {
        return Err(CliError::Usage(format!("--steps must be at least 2, got {steps}")));
    }
    if !(q_min < q_max) {
        return Err(CliError::Usage(format!("need q-min < q-max, got {q_min} and {q_max}")));
    }
    let h = (q_max - q_min) / (steps - 1) as f64;
    Ok((0..steps).map(|k| (k as f64).mul_add(h, q_min)).collect())
}

impl GridArgs {
    pub const DEFAULT_STEPS: usize = 11;

    pub fn n_values(&self) -> Result<Vec<u32>, CliError> {
        parse_n_list(&self.n)
    }

    pub fn q_values(&self) -> Result<Vec<f64>, CliError> {
        let steps = self.steps.unwrap_or(Self::DEFAULT_STEPS);
        match (&self.q, self.q_min, self.q_max) {
            (Some(q), None, None) => match parse_q(q)? {
                QSpec::Values(v) => {
                    if self.steps.is_some() {
                        return Err(CliError::Usage("--steps needs a range for --q".into()));
                    }
                    Ok(v)
                }
                QSpec::Range(a, b) => linear_grid(a, b, steps),
            },
            (None, Some(a), Some(b)) => linear_grid(a, b, steps),
            (None, None, None) => Err(CliError::Usage("give --q or --q-min/--q-max".into())),
            _ => Err(CliError::Usage("use either --q or --q-min/--q-max, not both".into())),
        }
    }
}
