//! Batch front-end for `polyheat`: reads a geometry file, runs one command
//! and writes a JSON or CSV report.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
pub mod output;

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, ValueEnum};
use polyheat::geometry::{build_domain_pair, DomainPair, GeometryOptions, Point};
use serde::Deserialize;

pub use output::{Cell, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Vertex table of the subdomain.
    Classify,
    /// Corner coefficients, either of a geometry or of `--function` at `--angles`.
    Coeffs,
    /// Expansion coefficients and `H(t)` over the time grid.
    Expand,
    /// Expansion against an independent oracle over the time grid.
    Validate,
    /// Identity and symmetry suites for the corner functions.
    Identities,
    /// Compares the subdomain with its complement in the domain.
    Isoflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Oracle {
    Spectral,
    Mc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    A,
    B,
    C,
    F,
    G,
    K,
    #[value(name = "b_hat")]
    BHat,
    #[value(name = "c_hat")]
    CHat,
    #[value(name = "d_hat")]
    DHat,
    #[value(name = "h_hat")]
    HHat,
}

#[derive(Debug, Parser)]
#[command(name = "polyheat", version, about = "Small-time heat content of polygonal subdomains")]
pub struct Cli {
    pub command: Command,
    /// Geometry file: {"outer": [[x,y],...], "inner": ring or list of rings, "eps": optional}.
    #[arg(long)]
    pub geometry: Option<PathBuf>,
    /// Comma-separated, strictly increasing times.
    #[arg(long = "t", value_delimiter = ',')]
    pub t: Vec<f64>,
    #[arg(long, value_enum, default_value = "spectral")]
    pub oracle: Oracle,
    /// Highest spectral mode per axis.
    #[arg(long, default_value_t = 2000)]
    pub modes: usize,
    #[arg(long, default_value_t = 100_000)]
    pub paths: usize,
    #[arg(long, default_value_t = 10_000)]
    pub steps: usize,
    /// Required with `--oracle mc`.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Tolerance for the checks of `validate`, `identities` and `isoflow`.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub allow_generalized: bool,
    /// Points per axis for the identity suites.
    #[arg(long, default_value_t = 10)]
    pub grid: usize,
    #[arg(long, value_enum)]
    pub function: Option<Function>,
    /// Comma-separated angle tuple; repeatable. `pi` suffixes are allowed, e.g. `0.25pi`.
    #[arg(long, allow_hyphen_values = true)]
    pub angles: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum OracleConfig {
    Spectral { max_mode: usize },
    Mc { n_paths: usize, n_steps: usize, seed: u64 },
}

/// Validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub geometry: Option<PathBuf>,
    pub t_grid: Vec<f64>,
    pub oracle: OracleConfig,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub tol: Option<f64>,
    pub allow_generalized: bool,
    pub grid: usize,
    pub function: Option<Function>,
    pub angles: Vec<Vec<f64>>,
}

const DEFAULT_T_GRID: [f64; 4] = [1e-4, 2e-4, 5e-4, 1e-3];

pub fn parse_angle(s: &str) -> Result<f64> {
    let s = s.trim();
    let (num, scale) = match s.strip_suffix("pi") {
        Some("") => ("1", std::f64::consts::PI),
        Some(rest) => (rest.trim_end_matches('*'), std::f64::consts::PI),
        None => (s, 1.0),
    };
    let v: f64 = num.trim().parse().with_context(|| format!("cannot parse angle {s:?}"))?;
    Ok(v * scale)
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let t_grid = if cli.t.is_empty() { DEFAULT_T_GRID.to_vec() } else { cli.t };
        if t_grid.iter().any(|&t| !(t > 0.0 && t.is_finite())) {
            bail!("times must be positive and finite");
        }
        if t_grid.windows(2).any(|w| w[1] <= w[0]) {
            bail!("times must be strictly increasing");
        }
        let oracle = match cli.oracle {
            Oracle::Spectral => OracleConfig::Spectral { max_mode: cli.modes },
            Oracle::Mc => {
                let seed = cli.seed.context("--seed is required with --oracle mc")?;
                OracleConfig::Mc { n_paths: cli.paths, n_steps: cli.steps, seed }
            }
        };
        if let Some(tol) = cli.tol {
            if !(tol > 0.0) {
                bail!("--tol must be positive");
            }
        }
        if cli.grid == 0 {
            bail!("--grid must be positive");
        }
        let angles = cli
            .angles
            .iter()
            .map(|tuple| tuple.split(',').map(parse_angle).collect::<Result<Vec<f64>>>())
            .collect::<Result<_>>()?;
        let needs_geometry = match cli.command {
            Command::Identities => false,
            Command::Coeffs => cli.function.is_none(),
            _ => true,
        };
        if needs_geometry && cli.geometry.is_none() {
            bail!("--geometry is required for this command");
        }
        if cli.command == Command::Coeffs && cli.function.is_some() && cli.angles.is_empty() {
            bail!("--function needs at least one --angles tuple");
        }
        Ok(Self {
            command: cli.command,
            geometry: cli.geometry,
            t_grid,
            oracle,
            out: cli.out,
            format: cli.format,
            tol: cli.tol,
            allow_generalized: cli.allow_generalized,
            grid: cli.grid,
            function: cli.function,
            angles,
        })
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum InnerRings {
    One(Vec<Point>),
    Many(Vec<Vec<Point>>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeometryFile {
    outer: Vec<Point>,
    inner: InnerRings,
    #[serde(default)]
    eps: Option<f64>,
}

pub fn load_geometry(path: &Path, allow_generalized: bool) -> Result<DomainPair> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: GeometryFile = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let inner = match file.inner {
        InnerRings::One(r) => vec![r],
        InnerRings::Many(r) => r,
    };
    let opts = GeometryOptions { eps: file.eps, allow_generalized };
    build_domain_pair(&file.outer, &inner, &opts).with_context(|| format!("building geometry from {}", path.display()))
}

/// Caps rayon's global pool at `POLYHEAT_THREADS` when set.
pub fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("POLYHEAT_THREADS") {
        let n: usize = v.trim().parse().with_context(|| format!("POLYHEAT_THREADS={v:?} is not a number"))?;
        if n == 0 {
            bail!("POLYHEAT_THREADS must be positive");
        }
        // Fails only if the pool already exists, in which case it is left alone.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Runs the command and writes its report. Returns whether every check passed.
pub fn run(config: &RunConfig) -> Result<bool> {
    let report = commands::execute(config)?;
    let text = match config.format {
        Format::Json => report.to_json()?,
        Format::Csv => report.to_csv(),
    };
    match &config.out {
        Some(path) => output::write_atomic(path, text.as_bytes())?,
        None => print!("{text}"),
    }
    Ok(report.passed)
}
