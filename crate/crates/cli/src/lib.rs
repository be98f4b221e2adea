//! Command-line front end for `surfdyn`.
//!
//! Every subcommand produces a [`Report`]: named sections of
//! `(quantity, expected, computed, status)` rows, rendered as a table or as
//! JSON. The process exits with 0 when no row fails, 1 when one does and 2
//! on malformed input.

mod commands;
pub mod format;
mod report;
pub mod sweeps;
pub mod thesis;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::de::DeserializeOwned;
use thiserror::Error;

use surfdyn::exact::{parse_rational, Interval, Precision};

pub use report::{Report, Row, Section, Status};

/// Environment variable holding the default precision in decimal digits.
pub const PRECISION_ENV: &str = "SURFDYN_PRECISION";
pub const DEFAULT_PRECISION: u32 = 30;
pub const DEFAULT_SAMPLES: u64 = 100_000;
pub const DEFAULT_SEED: u64 = 20240611;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}:{column}: {message}")]
    Json {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid input: {0}")]
    Input(String),

    #[error(transparent)]
    Core(#[from] surfdyn::Error),
}

impl CliError {
    /// Errors are always input errors.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "surfdyn", version, about = "Exact dynamics of surface automorphisms")]
pub struct Cli {
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,

    /// Working precision in decimal digits (at least 16).
    #[arg(long, global = true, env = PRECISION_ENV, default_value_t = DEFAULT_PRECISION)]
    pub precision: u32,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Classify an integer isometry of a hyperbolic lattice.
    Classify {
        /// Gram matrix JSON: {"rank": n, "gram": [[..]]}.
        #[arg(long)]
        lattice: PathBuf,
        /// Isometry JSON: {"matrix": [[..]]}.
        #[arg(long)]
        isometry: PathBuf,
    },
    /// Salem / Pisot / quadratic unit test of a polynomial.
    Salem {
        /// "lehmer" or integer coefficients, highest degree first.
        #[arg(long)]
        poly: String,
    },
    /// Word in the three involutions of a (2,2,2)-surface.
    Surface222 {
        #[arg(long)]
        word: String,
        /// Entropy floor α·log λ₁₀ to compare against.
        #[arg(long)]
        alpha: Option<String>,
        /// Number of volume-growth terms to compute.
        #[arg(long)]
        growth: Option<usize>,
    },
    /// Word in the two involutions of a Wehler surface.
    Wehler {
        #[arg(long)]
        word: String,
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Linear automorphism of a 2-torus, "a,b,c,d" row-major.
    Torus {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Picard numbers and concordance of a real abelian surface.
    Abelian {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Rational lines on E_y × E_y.
    Lines {
        /// Largest |a|, |b|.
        #[arg(long, default_value_t = 5)]
        max: i64,
        /// Imaginary period: a rational or "pi", "1/pi", "pi^2", "sqrt(n)".
        #[arg(long, default_value = "1")]
        y: String,
    },
    /// Reduce an ample class kH·H + kV·V + kΔ·Δ to the H, V, Δ triangle.
    Reduce {
        /// "h,v,d".
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[arg(long, default_value = "1")]
        y: String,
    },
    /// Birational self-map of ℙ¹×ℙ¹.
    Birational {
        /// "family:n,d,t1,t2", "gn:n,d", "twist:t1,t2", "swap", "identity".
        #[arg(long, conflicts_with = "file")]
        map: Option<String>,
        /// Map JSON.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Number of iterates in the degree sequence (at most 4).
        #[arg(long, default_value_t = 2)]
        iterates: usize,
    },
    /// Cauchy–Crofton estimate of the length of a real plane curve.
    Crofton {
        /// "line", "circle", "empty-conic", "two-lines" or a curve JSON path.
        #[arg(long)]
        curve: String,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Full golden-value suite.
    ThesisReport {
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Run only these criteria, e.g. "1,8,10".
        #[arg(long)]
        only: Option<String>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Classify { .. } => "classify",
            Command::Salem { .. } => "salem",
            Command::Surface222 { .. } => "surface222",
            Command::Wehler { .. } => "wehler",
            Command::Torus { .. } => "torus",
            Command::Abelian { .. } => "abelian",
            Command::Lines { .. } => "lines",
            Command::Reduce { .. } => "reduce",
            Command::Birational { .. } => "birational",
            Command::Crofton { .. } => "crofton",
            Command::ThesisReport { .. } => "thesis-report",
        }
    }

    fn inputs(&self) -> Vec<PathBuf> {
        match self {
            Command::Classify { lattice, isometry } => vec![lattice.clone(), isometry.clone()],
            Command::Abelian { spec } => vec![spec.clone()],
            Command::Birational { file: Some(f), .. } => vec![f.clone()],
            Command::Crofton { curve, .. } if surfdyn::crofton::ProjectiveCurve::named(curve).is_none() => {
                vec![PathBuf::from(curve)]
            }
            _ => Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub inputs: Vec<PathBuf>,
    pub format: OutputFormat,
    /// Decimal digits, at least 16.
    pub precision: u32,
    pub seed: u64,
    pub samples: u64,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        let (seed, samples) = match &command {
            Command::Crofton { seed, samples, .. } | Command::ThesisReport { seed, samples, .. } => (*seed, *samples),
            _ => (DEFAULT_SEED, DEFAULT_SAMPLES),
        };
        RunConfig {
            inputs: command.inputs(),
            command,
            format: OutputFormat::Table,
            precision: DEFAULT_PRECISION,
            seed,
            samples,
        }
    }

    pub fn from_cli(cli: Cli) -> Self {
        let mut c = RunConfig::new(cli.command);
        c.format = if cli.json { OutputFormat::Json } else { OutputFormat::Table };
        c.precision = cli.precision;
        c
    }

    pub fn validate(&self) -> Result<()> {
        if self.precision < 16 {
            return Err(CliError::Input(format!("precision {} is below 16 digits", self.precision)));
        }
        if self.samples < 1 {
            return Err(CliError::Input("samples must be at least 1".into()));
        }
        Ok(())
    }

    pub fn bits(&self) -> Precision {
        Precision::from_decimal_digits(self.precision)
    }

    pub fn digits(&self) -> usize {
        self.precision as usize
    }
}

pub fn run(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let mut report = Report::new(config.command.name());
    match &config.command {
        Command::Classify { lattice, isometry } => commands::classify(config, lattice, isometry, &mut report)?,
        Command::Salem { poly } => commands::salem(config, poly, &mut report)?,
        Command::Surface222 { word, alpha, growth } => {
            commands::surface222(config, word, alpha.as_deref(), *growth, &mut report)?
        }
        Command::Wehler { word, alpha } => commands::wehler(config, word, alpha.as_deref(), &mut report)?,
        Command::Torus { matrix, alpha } => commands::torus(config, matrix, alpha.as_deref(), &mut report)?,
        Command::Abelian { spec } => commands::abelian(config, spec, &mut report)?,
        Command::Lines { max, y } => commands::lines(config, *max, y, &mut report)?,
        Command::Reduce { class, y } => commands::reduce(config, class, y, &mut report)?,
        Command::Birational { map, file, iterates } => {
            commands::birational(config, map.as_deref(), file.as_deref(), *iterates, &mut report)?
        }
        Command::Crofton { curve, .. } => commands::crofton(config, curve, &mut report)?,
        Command::ThesisReport { only, .. } => {
            let selected = match only {
                Some(s) => parse_ints(s)?.into_iter().map(|n| n as usize).collect(),
                None => thesis::CRITERIA.to_vec(),
            };
            for n in selected {
                report.push(thesis::criterion(n, config)?);
            }
        }
    }
    Ok(report)
}

/// `α · log λ₁₀` for `0 ≤ α ≤ 1`.
pub fn entropy_floor(alpha: &BigRational, p: Precision) -> Result<Interval> {
    Ok(surfdyn::surfaces::entropy_floor(alpha, p)?)
}

pub fn parse_alpha(s: &str) -> Result<BigRational> {
    parse_rational(s).ok_or_else(|| CliError::Input(format!("cannot parse rational {s:?}")))
}

pub(crate) fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Parse a JSON file, reporting line and column on failure.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = read_text(path)?;
    parse_json(&path.display().to_string(), &text)
}

pub fn parse_json<T: DeserializeOwned>(origin: &str, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| CliError::Json {
        path: origin.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Comma separated integers.
pub fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| CliError::Input(format!("expected comma separated integers, got {s:?}")))
}
