//! Scenario configuration: defaults, an optional `key = value` file, then flags.

use std::path::{Path, PathBuf};

use boostlab_core::qudit::PhiInterpretation;
use clap::Args;
use serde::Serialize;
use thiserror::Error;

/// Environment variable naming the default output directory.
pub const OUT_ENV: &str = "BOOSTLAB_OUT";
const DEFAULT_OUT: &str = "out";

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("invalid number `{0}`")]
    Number(String),
    #[error("invalid grid `{0}`: expected start:stop:step or a comma list")]
    Grid(String),
    #[error("invalid direction `{0}`: expected x,y,z")]
    Direction(String),
    #[error("unknown config key `{0}`")]
    UnknownKey(String),
    #[error("line {line} of {path}: {message}")]
    File {
        path: String,
        line: usize,
        message: String,
    },
    #[error("{0}")]
    Invalid(String),
}

/// Parses a decimal or a fraction such as `7/60`.
pub fn parse_number(s: &str) -> Result<f64, ConfigError> {
    let s = s.trim();
    let bad = || ConfigError::Number(s.to_string());
    let v = match s.split_once('/') {
        Some((n, d)) => {
            let n: f64 = n.trim().parse().map_err(|_| bad())?;
            let d: f64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0.0 {
                return Err(bad());
            }
            n / d
        }
        None => s.parse().map_err(|_| bad())?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

/// `start:stop:step` (stop included when hit) or `a,b,c`.
pub fn parse_grid(s: &str) -> Result<Vec<f64>, ConfigError> {
    let bad = || ConfigError::Grid(s.to_string());
    let parts: Vec<&str> = s.split(':').collect();
    match parts[..] {
        [start, stop, step] => {
            let (start, stop, step) = (
                parse_number(start)?,
                parse_number(stop)?,
                parse_number(step)?,
            );
            if !(step > 0.0) || stop < start {
                return Err(bad());
            }
            let n = ((stop - start) / step + 1e-9).floor() as usize;
            Ok((0..=n).map(|i| start + i as f64 * step).collect())
        }
        [single] => {
            let vals = single
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(parse_number)
                .collect::<Result<Vec<_>, _>>()?;
            if vals.is_empty() {
                Err(bad())
            } else {
                Ok(vals)
            }
        }
        _ => Err(bad()),
    }
}

pub fn parse_direction(s: &str) -> Result<[f64; 3], ConfigError> {
    let vals: Vec<f64> = s
        .split(',')
        .map(parse_number)
        .collect::<Result<_, _>>()
        .map_err(|_| ConfigError::Direction(s.to_string()))?;
    <[f64; 3]>::try_from(vals).map_err(|_| ConfigError::Direction(s.to_string()))
}

fn number_arg(s: &str) -> Result<f64, String> {
    parse_number(s).map_err(|e| e.to_string())
}

/// Flags shared by every scenario.
#[derive(Debug, Clone, Default, Args)]
pub struct ConfigArgs {
    /// Kinetic energy of each particle (mass units)
    #[arg(long, global = true, value_parser = number_arg, allow_hyphen_values = true)]
    pub energy: Option<f64>,
    /// Boost direction as x,y,z
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub direction: Option<String>,
    /// Rapidity; repeat for several
    #[arg(long = "xi", global = true, value_parser = number_arg, allow_hyphen_values = true)]
    pub xi: Vec<f64>,
    /// Grid of x values: start:stop:step or a comma list (fractions allowed)
    #[arg(long, global = true)]
    pub x_grid: Option<String>,
    /// Weight of the symmetric-momentum component in the activation state
    #[arg(long, global = true, value_parser = number_arg)]
    pub p: Option<f64>,
    /// Reading of the activation spin component
    #[arg(long, global = true)]
    pub interpretation: Option<String>,
    /// Product terms in separability certificates
    #[arg(long, global = true)]
    pub k_terms: Option<usize>,
    /// Solver restarts
    #[arg(long, global = true)]
    pub restarts: Option<usize>,
    /// Hilbert–Schmidt gap accepted as a certificate
    #[arg(long, global = true, value_parser = number_arg)]
    pub tol: Option<f64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Simplex points for the scan
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Output directory (default: $BOOSTLAB_OUT or ./out)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// key = value file; flags override its entries
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioConfig {
    pub energy: f64,
    pub direction: [f64; 3],
    /// `None` selects the scenario's own default.
    pub rapidities: Option<Vec<f64>>,
    pub x_grid: Option<Vec<f64>>,
    pub p: f64,
    pub interpretation: PhiInterpretation,
    pub k_terms: usize,
    pub restarts: usize,
    pub tol: f64,
    pub seed: u64,
    pub samples: usize,
    pub out: PathBuf,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            energy: 1.0,
            direction: [0.0, 0.0, 1.0],
            rapidities: None,
            x_grid: None,
            p: 0.04,
            interpretation: PhiInterpretation::default(),
            k_terms: 10,
            restarts: 16,
            tol: 1e-6,
            seed: 0,
            samples: 1000,
            out: std::env::var_os(OUT_ENV)
                .map(PathBuf::from)
                .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT)),
        }
    }
}

impl ScenarioConfig {
    /// Defaults, then `args.config` if given, then the flags.
    pub fn resolve(args: &ConfigArgs) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        if let Some(path) = &args.config {
            cfg.apply_file(path)?;
        }
        cfg.apply_args(args)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::File {
            path: path.display().to_string(),
            line: 0,
            message: e.to_string(),
        })?;
        self.apply_text(&text)
            .map_err(|(line, e)| ConfigError::File {
                path: path.display().to_string(),
                line,
                message: e.to_string(),
            })
    }

    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), (usize, ConfigError)> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                (
                    i + 1,
                    ConfigError::Invalid(format!("expected key = value, got `{line}`")),
                )
            })?;
            self.set(key.trim(), value.trim()).map_err(|e| (i + 1, e))?;
        }
        Ok(())
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let int = |v: &str| {
            v.parse::<u64>()
                .map_err(|_| ConfigError::Number(v.to_string()))
        };
        match key.replace('_', "-").as_str() {
            "energy" => self.energy = parse_number(value)?,
            "direction" => self.direction = parse_direction(value)?,
            "xi" => self.rapidities = Some(parse_grid(value)?),
            "x-grid" => self.x_grid = Some(parse_grid(value)?),
            "p" => self.p = parse_number(value)?,
            "interpretation" => self.interpretation = parse_interpretation(value)?,
            "k-terms" => self.k_terms = int(value)? as usize,
            "restarts" => self.restarts = int(value)? as usize,
            "tol" => self.tol = parse_number(value)?,
            "seed" => self.seed = int(value)?,
            "samples" => self.samples = int(value)? as usize,
            "out" => self.out = PathBuf::from(value),
            _ => return Err(ConfigError::UnknownKey(key.to_string())),
        }
        Ok(())
    }

    pub fn apply_args(&mut self, a: &ConfigArgs) -> Result<(), ConfigError> {
        if let Some(v) = a.energy {
            self.energy = v;
        }
        if let Some(v) = &a.direction {
            self.direction = parse_direction(v)?;
        }
        if !a.xi.is_empty() {
            self.rapidities = Some(a.xi.clone());
        }
        if let Some(v) = &a.x_grid {
            self.x_grid = Some(parse_grid(v)?);
        }
        if let Some(v) = a.p {
            self.p = v;
        }
        if let Some(v) = &a.interpretation {
            self.interpretation = parse_interpretation(v)?;
        }
        if let Some(v) = a.k_terms {
            self.k_terms = v;
        }
        if let Some(v) = a.restarts {
            self.restarts = v;
        }
        if let Some(v) = a.tol {
            self.tol = v;
        }
        if let Some(v) = a.seed {
            self.seed = v;
        }
        if let Some(v) = a.samples {
            self.samples = v;
        }
        if let Some(v) = &a.out {
            self.out = v.clone();
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let fail = |m: &str| Err(ConfigError::Invalid(m.to_string()));
        if !(self.energy > 0.0) {
            return fail("energy must be positive");
        }
        if !(self.direction.iter().map(|x| x * x).sum::<f64>() > 0.0) {
            return fail("boost direction must be nonzero");
        }
        if self.rapidities.as_ref().is_some_and(|r| r.is_empty())
            || self.x_grid.as_ref().is_some_and(|g| g.is_empty())
        {
            return fail("grids must be non-empty");
        }
        if !(0.0..=1.0).contains(&self.p) {
            return fail("p must lie in [0, 1]");
        }
        if self.k_terms == 0 || self.restarts == 0 || self.samples == 0 {
            return fail("k-terms, restarts and samples must be at least 1");
        }
        if !(self.tol > 0.0) {
            return fail("tol must be positive");
        }
        Ok(())
    }

    pub fn rapidities_or(&self, default: &[f64]) -> Vec<f64> {
        self.rapidities.clone().unwrap_or_else(|| default.to_vec())
    }

    pub fn x_grid_or(&self, default: &[f64]) -> Vec<f64> {
        self.x_grid.clone().unwrap_or_else(|| default.to_vec())
    }

    /// Unit boost direction.
    pub fn unit_direction(&self) -> [f64; 3] {
        let n = self.direction.iter().map(|x| x * x).sum::<f64>().sqrt();
        self.direction.map(|x| x / n)
    }

    /// Whether kinematics match the published setting (`E = 1`, boost along z).
    pub fn is_reference_frame(&self) -> bool {
        let d = self.unit_direction();
        (self.energy - 1.0).abs() < 1e-12 && d[0].abs() < 1e-12 && d[1].abs() < 1e-12 && d[2] > 0.0
    }
}

fn parse_interpretation(s: &str) -> Result<PhiInterpretation, ConfigError> {
    s.parse().map_err(|_| {
        let ids: Vec<&str> = PhiInterpretation::ALL.iter().map(|i| i.id()).collect();
        ConfigError::Invalid(format!(
            "unknown interpretation `{s}` (expected one of {})",
            ids.join(", ")
        ))
    })
}
