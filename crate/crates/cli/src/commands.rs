use std::fmt;
use std::path::{Path, PathBuf};

use cvsteer::sweep::RootKind;
use cvsteer::{
    evaluate_at, find_critical_angles, hierarchy_report, sweep_range, Criterion, CriterionResult, CriticalAngle, Error,
    StateId,
};
use serde::{Deserialize, Serialize};

use crate::config::{ConfigError, Format, RunConfig};
use crate::render::{format_float, sweep_csv};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_TOLERANCE: u8 = 3;
pub const EXIT_IO: u8 = 4;
pub const EXIT_NO_ROOT: u8 = 5;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError {
            code: EXIT_CONFIG,
            message: e.to_string(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ConvergenceFailure { .. } | Error::DegenerateMarginal { .. } => EXIT_TOLERANCE,
            Error::NoRootInRange { .. } => EXIT_NO_ROOT,
            _ => EXIT_CONFIG,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

pub type CliResult = Result<u8, CliError>;

fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError {
            code: EXIT_IO,
            message: format!("cannot write {}: {e}", p.display()),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output types serialize");
    s.push('\n');
    s
}

/// Full precision, exponent form outside the usual magnitude range.
fn full(v: f64) -> String {
    let m = v.abs();
    if v == 0.0 || (1e-4..1e15).contains(&m) {
        format!("{}", v + 0.0)
    } else {
        format!("{v:e}")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalOutput {
    pub state: StateId,
    pub theta: f64,
    pub results: Vec<CriterionResult>,
}

pub fn eval(cfg: &RunConfig) -> CliResult {
    let theta = cfg
        .theta
        .ok_or_else(|| ConfigError::new("theta", "eval needs --theta"))?;
    let results = cfg
        .criteria
        .iter()
        .map(|&c| evaluate_at(cfg.state, c, theta, &cfg.units, &cfg.spec))
        .collect::<cvsteer::Result<Vec<_>>>()?;
    let text = match cfg.format_or(Format::Csv) {
        Format::Json => to_json(&EvalOutput {
            state: cfg.state,
            theta,
            results: results.clone(),
        }),
        Format::Csv => {
            let mut s = String::from("state,criterion,theta,value,bound,violated,flagged\n");
            for r in &results {
                s.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    cfg.state,
                    r.criterion,
                    format_float(theta),
                    format_float(r.value),
                    format_float(r.criterion.bound()),
                    r.violated,
                    r.flagged
                ));
            }
            s
        }
    };
    emit(cfg.output.as_deref(), &text)?;
    let flagged: Vec<String> = results
        .iter()
        .filter(|r| r.flagged)
        .map(|r| r.criterion.to_string())
        .collect();
    if !flagged.is_empty() && !cfg.allow_flagged {
        return Err(CliError {
            code: EXIT_TOLERANCE,
            message: format!(
                "panel_tol not met for {} (rerun with --allow-flagged to accept)",
                flagged.join(", ")
            ),
        });
    }
    Ok(EXIT_OK)
}

pub fn sweep(cfg: &RunConfig) -> CliResult {
    let result = sweep_range(
        cfg.state,
        &cfg.criteria,
        cfg.theta_min,
        cfg.theta_max,
        cfg.steps,
        &cfg.units,
        &cfg.spec,
    )?;
    if !result.flagged.is_empty() {
        eprintln!("warning: panel_tol not met at {} grid point(s)", result.flagged.len());
    }
    let text = match cfg.format_or(Format::Csv) {
        Format::Csv => sweep_csv(&result),
        Format::Json => to_json(&result),
    };
    emit(cfg.output.as_deref(), &text)?;
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalOutput {
    pub state: StateId,
    pub theta_min: f64,
    pub theta_max: f64,
    pub critical_angles: Vec<CriticalAngle>,
    /// Requested criteria with no sign change in range.
    pub no_root: Vec<Criterion>,
}

/// Default destination of the full-precision critical-angle file.
pub fn default_critical_path(state: StateId, format: Format) -> PathBuf {
    PathBuf::from(format!("critical-{state}.{}", format.extension()))
}

pub fn critical(cfg: &RunConfig) -> CliResult {
    let mut angles = Vec::new();
    let mut no_root = Vec::new();
    for &c in &cfg.criteria {
        let in_range: Vec<CriticalAngle> = match find_critical_angles(cfg.state, c, &cfg.units, &cfg.spec, cfg.root_tol)
        {
            Ok(roots) => roots
                .into_iter()
                .filter(|r| (cfg.theta_min..=cfg.theta_max).contains(&r.angle))
                .collect(),
            Err(Error::NoRootInRange { .. }) => Vec::new(),
            Err(e) => return Err(e.into()),
        };
        if !in_range.iter().any(|r| r.kind == RootKind::Crossing) {
            no_root.push(c);
        }
        angles.extend(in_range);
    }
    angles.sort_by(|a, b| a.angle.total_cmp(&b.angle).then(a.criterion.cmp(&b.criterion)));

    for r in &angles {
        let kind = match r.kind {
            RootKind::Crossing => "crossing",
            RootKind::Touch => "touch",
        };
        println!("{:<8} {:.4}  {kind}", r.criterion.to_string(), r.angle);
    }

    let format = cfg.format_or(Format::Csv);
    let out = CriticalOutput {
        state: cfg.state,
        theta_min: cfg.theta_min,
        theta_max: cfg.theta_max,
        critical_angles: angles,
        no_root: no_root.clone(),
    };
    let text = match format {
        Format::Json => to_json(&out),
        Format::Csv => {
            let mut s = String::from("criterion,angle,residual,kind\n");
            for r in &out.critical_angles {
                let kind = if r.kind == RootKind::Crossing {
                    "crossing"
                } else {
                    "touch"
                };
                s.push_str(&format!(
                    "{},{},{},{kind}\n",
                    r.criterion,
                    full(r.angle),
                    full(r.residual)
                ));
            }
            s
        }
    };
    let path = cfg
        .output
        .clone()
        .unwrap_or_else(|| default_critical_path(cfg.state, format));
    emit(Some(&path), &text)?;

    if !no_root.is_empty() {
        let names: Vec<String> = no_root.iter().map(Criterion::to_string).collect();
        return Err(CliError {
            code: EXIT_NO_ROOT,
            message: format!(
                "no sign change in [{}, {}] for {}",
                format_float(cfg.theta_min),
                format_float(cfg.theta_max),
                names.join(", ")
            ),
        });
    }
    Ok(EXIT_OK)
}

pub fn report(cfg: &RunConfig) -> CliResult {
    if cfg.format == Some(Format::Csv) {
        return Err(ConfigError::new("format", "report output is JSON only").into());
    }
    let r = hierarchy_report(cfg.state, &cfg.units, &cfg.spec, cfg.steps, cfg.root_tol)?;
    emit(cfg.output.as_deref(), &to_json(&r))?;
    Ok(EXIT_OK)
}
