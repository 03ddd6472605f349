//! Run configuration: defaults, overridden by a `key = value` file,
//! overridden by command-line flags.

use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use cvsteer::sweep::DEFAULT_ROOT_TOL;
use cvsteer::{Criterion, QuadratureSpec, StateId, UnitSystem};

/// Slack on the `[0, π]` bounds so that a typed-out π is accepted.
const THETA_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format '{other}' (expected csv or json)")),
        }
    }
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// A configuration error, always naming the offending field.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid {}: {}", self.field, self.message)
    }
}

impl std::error::Error for ConfigError {}

/// Every setting left unset at one layer; layers merge field by field.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub state: Option<StateId>,
    pub criteria: Option<Vec<Criterion>>,
    pub theta: Option<f64>,
    pub theta_min: Option<f64>,
    pub theta_max: Option<f64>,
    pub steps: Option<usize>,
    pub gh_order: Option<usize>,
    pub half_width: Option<f64>,
    pub panel_tol: Option<f64>,
    pub max_depth: Option<u32>,
    pub root_tol: Option<f64>,
    pub m_omega: Option<f64>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub allow_flagged: Option<bool>,
}

macro_rules! merge_fields {
    ($hi:expr, $lo:expr, $($f:ident),*) => {
        Overrides { $($f: $hi.$f.or($lo.$f),)* }
    };
}

impl Overrides {
    /// Fields set in `self` win over those in `lower`.
    pub fn over(self, lower: Overrides) -> Overrides {
        merge_fields!(
            self,
            lower,
            state,
            criteria,
            theta,
            theta_min,
            theta_max,
            steps,
            gh_order,
            half_width,
            panel_tol,
            max_depth,
            root_tol,
            m_omega,
            output,
            format,
            allow_flagged
        )
    }

    /// Parses a config file body. Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Overrides, ConfigError> {
        let mut o = Overrides::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError::new(
                    format!("config line {}", lineno + 1),
                    format!("expected 'key = value', found '{line}'"),
                ));
            };
            let (key, value) = (key.trim(), value.trim());
            match key.to_ascii_lowercase().replace('-', "_").as_str() {
                "state" => o.state = Some(parse_field(key, value)?),
                "criteria" => o.criteria = Some(parse_criteria(value)?),
                "theta" => o.theta = Some(parse_field(key, value)?),
                "theta_min" => o.theta_min = Some(parse_field(key, value)?),
                "theta_max" => o.theta_max = Some(parse_field(key, value)?),
                "steps" => o.steps = Some(parse_field(key, value)?),
                "gh_order" => o.gh_order = Some(parse_field(key, value)?),
                "half_width" | "l" => o.half_width = Some(parse_field(key, value)?),
                "panel_tol" => o.panel_tol = Some(parse_field(key, value)?),
                "max_depth" => o.max_depth = Some(parse_field(key, value)?),
                "root_tol" => o.root_tol = Some(parse_field(key, value)?),
                "m_omega" => o.m_omega = Some(parse_field(key, value)?),
                "output" | "output_path" => o.output = Some(PathBuf::from(value)),
                "format" => o.format = Some(parse_field(key, value)?),
                "allow_flagged" => o.allow_flagged = Some(parse_field(key, value)?),
                _ => return Err(ConfigError::new(key, "unknown configuration key")),
            }
        }
        Ok(o)
    }

    pub fn load(path: &Path) -> Result<Overrides, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::new("config", format!("cannot read {}: {e}", path.display())))?;
        Overrides::parse(&text)
    }
}

fn parse_field<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: fmt::Display,
{
    value
        .parse()
        .map_err(|e| ConfigError::new(key, format!("'{value}': {e}")))
}

/// Parses a comma-separated criteria list.
pub fn parse_criteria(value: &str) -> Result<Vec<Criterion>, ConfigError> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|e: cvsteer::Error| ConfigError::new("criteria", e.to_string()))
        })
        .collect()
}

/// A fully resolved and validated run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub state: StateId,
    /// Sorted and deduplicated; output order never follows request order.
    pub criteria: Vec<Criterion>,
    pub theta: Option<f64>,
    pub theta_min: f64,
    pub theta_max: f64,
    pub steps: usize,
    pub spec: QuadratureSpec,
    pub root_tol: f64,
    pub units: UnitSystem,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub allow_flagged: bool,
}

pub const DEFAULT_STEPS: usize = 315;

fn check_theta(field: &str, t: f64) -> Result<f64, ConfigError> {
    if t.is_finite() && (-THETA_SLACK..=PI + THETA_SLACK).contains(&t) {
        Ok(t.clamp(0.0, PI))
    } else {
        Err(ConfigError::new(field, format!("{t} is outside [0, π]")))
    }
}

impl RunConfig {
    pub fn resolve(o: Overrides) -> Result<RunConfig, ConfigError> {
        let defaults = QuadratureSpec::default();
        let spec = QuadratureSpec {
            gh_order: o.gh_order.unwrap_or(defaults.gh_order),
            half_width: o.half_width.unwrap_or(defaults.half_width),
            panel_tol: o.panel_tol.unwrap_or(defaults.panel_tol),
            max_depth: o.max_depth.unwrap_or(defaults.max_depth),
        };
        if spec.gh_order < 2 {
            return Err(ConfigError::new(
                "gh_order",
                format!("must be at least 2, got {}", spec.gh_order),
            ));
        }
        if !(spec.half_width.is_finite() && spec.half_width > 0.0) {
            return Err(ConfigError::new(
                "half_width",
                format!("must be positive, got {}", spec.half_width),
            ));
        }
        if !(spec.panel_tol.is_finite() && spec.panel_tol > 0.0) {
            return Err(ConfigError::new(
                "panel_tol",
                format!("must be positive, got {}", spec.panel_tol),
            ));
        }
        if spec.max_depth == 0 {
            return Err(ConfigError::new("max_depth", "must be positive"));
        }
        spec.validate()
            .map_err(|e| ConfigError::new("quadrature", e.to_string()))?;

        let root_tol = o.root_tol.unwrap_or(DEFAULT_ROOT_TOL);
        if !(root_tol.is_finite() && root_tol > 0.0) {
            return Err(ConfigError::new(
                "root_tol",
                format!("must be positive, got {root_tol}"),
            ));
        }
        let m_omega = o.m_omega.unwrap_or(1.0);
        let units = UnitSystem::new(m_omega).map_err(|e| ConfigError::new("m_omega", e.to_string()))?;

        let mut criteria = o.criteria.unwrap_or_else(|| vec![Criterion::Reid, Criterion::Entropic]);
        criteria.sort();
        criteria.dedup();
        if criteria.is_empty() {
            return Err(ConfigError::new("criteria", "at least one criterion is required"));
        }

        let theta = o.theta.map(|t| check_theta("theta", t)).transpose()?;
        let theta_min = check_theta("theta_min", o.theta_min.unwrap_or(0.0))?;
        let theta_max = check_theta("theta_max", o.theta_max.unwrap_or(PI))?;
        if theta_min >= theta_max {
            return Err(ConfigError::new(
                "theta_min",
                format!("{theta_min} is not below theta_max {theta_max}"),
            ));
        }
        let steps = o.steps.unwrap_or(DEFAULT_STEPS);
        if steps < 2 {
            return Err(ConfigError::new("steps", format!("must be at least 2, got {steps}")));
        }

        Ok(RunConfig {
            state: o.state.unwrap_or(StateId::Psi),
            criteria,
            theta,
            theta_min,
            theta_max,
            steps,
            spec,
            root_tol,
            units,
            output: o.output,
            format: o.format,
            allow_flagged: o.allow_flagged.unwrap_or(false),
        })
    }

    pub fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}
