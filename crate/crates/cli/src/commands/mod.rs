//! Subcommand implementations and the argument groups they share.

pub mod density;
pub mod locus;
pub mod spectrum;
pub mod sweep;
pub mod table1;

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use thiserror::Error;

use qrc_core::arnold::{build_symmetric, WellShape};
use qrc_core::catastrophe::sextic;
use qrc_core::spectrum::{auto_config, SolverConfig};
use qrc_core::{Error as CoreError, Polynomial};

use crate::output::{emit, Table};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Numeric(_) => 2,
        }
    }
}

/// Bad input (including a grid that cannot hold the requested states) is a
/// usage error; everything else is a numerical failure.
impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let msg = e.to_string();
        match e {
            CoreError::NonFiniteCoefficient { .. }
            | CoreError::ZeroPolynomial
            | CoreError::InvalidInterval { .. }
            | CoreError::InvalidShape(_)
            | CoreError::InvalidParameter(_)
            | CoreError::InvalidConfig(_)
            | CoreError::PerturbationTooLarge { .. }
            | CoreError::OriginNotAWell { .. }
            | CoreError::TooManyLevels { .. }
            | CoreError::DomainTooSmall { .. } => CliError::Usage(msg),
            _ => CliError::Numeric(msg),
        }
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write here instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

impl OutputArgs {
    /// Rejects SVG for commands that only produce tables.
    pub fn tabular(&self) -> CliResult {
        if self.format == Format::Svg {
            return Err(usage("svg output is only available for the density command"));
        }
        Ok(())
    }

    pub fn write_table(&self, table: &Table) -> CliResult {
        let text = match self.format {
            Format::Json => table.to_json(),
            _ => table.to_csv(),
        };
        self.write(&text)
    }

    pub fn write(&self, text: &str) -> CliResult {
        emit(text, self.output.as_deref()).map_err(|e| {
            let target = self.output.as_ref().map_or("stdout".into(), |p| p.display().to_string());
            usage(format!("cannot write {target}: {e}"))
        })
    }
}

pub fn positive(name: &str, v: f64) -> CliResult<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(usage(format!("--{name} must be positive and finite, got {v}")))
    }
}

fn parse_floats(flag: &str, s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| usage(format!("--{flag}: '{}' is not a number", t.trim())))
        })
        .collect()
}

/// Which potential to work with: explicit coefficients, a symmetric shape, or
/// the symmetric sextic at (α, δ).
#[derive(Debug, Clone, Args)]
pub struct PotentialArgs {
    /// Coefficients c0,c1,… in ascending powers of x.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["shape", "alpha"])]
    pub potential: Option<String>,
    /// Cumulative increments s1,s2,… of a symmetric potential.
    #[arg(long, conflicts_with = "alpha")]
    pub shape: Option<String>,
    /// Inner width α of the symmetric sextic.
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// μ² = β²/α² of the sextic (default 2).
    #[arg(long, allow_negative_numbers = true, conflicts_with = "delta", requires = "alpha")]
    pub mu2: Option<f64>,
    /// δ = μ² − 2 of the sextic.
    #[arg(long, allow_negative_numbers = true, requires = "alpha")]
    pub delta: Option<f64>,
}

impl PotentialArgs {
    pub fn build(&self) -> CliResult<Polynomial> {
        if let Some(c) = &self.potential {
            return Ok(Polynomial::new(parse_floats("potential", c)?)?);
        }
        if let Some(s) = &self.shape {
            return Ok(build_symmetric(&WellShape::new(parse_floats("shape", s)?)?));
        }
        if let Some(alpha) = self.alpha {
            return Ok(sextic(positive("alpha", alpha)?, self.sextic_delta())?);
        }
        Err(usage("one of --potential, --shape or --alpha is required"))
    }

    pub fn sextic_delta(&self) -> f64 {
        self.delta.or(self.mu2.map(|m| m - 2.0)).unwrap_or(0.0)
    }

    pub fn describe(&self) -> String {
        if let Some(c) = &self.potential {
            format!("V = [{c}]")
        } else if let Some(s) = &self.shape {
            format!("shape [{s}]")
        } else {
            format!("α = {}, δ = {}", self.alpha.unwrap_or(f64::NAN), self.sextic_delta())
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Λ, with Λ² = ħ²/2m.
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// Grid spacing h.
    #[arg(long, default_value_t = 0.005)]
    pub step: f64,
    /// Domain half-width L; chosen from the potential when omitted.
    #[arg(long)]
    pub half_width: Option<f64>,
}

impl GridArgs {
    pub fn config(&self, p: &Polynomial, levels: usize) -> CliResult<SolverConfig> {
        positive("lambda", self.lambda)?;
        positive("step", self.step)?;
        Ok(match self.half_width {
            Some(l) => SolverConfig::with_step(self.lambda, positive("half-width", l)?, self.step, levels),
            None => auto_config(p, levels, self.lambda, self.step)?,
        })
    }
}

/// Half-width of a window holding every real stationary point, plus one.
pub fn stationary_window(p: &Polynomial) -> CliResult<f64> {
    let dp = p.derivative();
    if dp.degree() == 0 {
        return Ok(1.0);
    }
    let lead = dp.leading().abs();
    let bound = 1.0 + dp.coeffs()[..dp.degree()].iter().fold(0.0f64, |m, c| m.max(c.abs() / lead));
    let roots = dp.real_roots(-bound, bound, 1e-12 * bound)?;
    Ok(1.0 + roots.iter().fold(0.0f64, |m, r| m.max(r.x.abs())))
}
