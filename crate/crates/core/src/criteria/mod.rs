//! Steering and Bell criteria evaluated on a [`FockState`].
//!
//! Each evaluator returns a [`CriterionResult`] whose `value` is positive
//! exactly when the corresponding local bound is broken.

mod chsh;
mod entropic;
mod reid;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::QuadratureSpec;
use crate::state::FockState;
use crate::units::UnitSystem;

pub use chsh::{chsh_max, correlation_matrix, CorrelationMatrix, PseudoPauli};
pub use entropic::{conditional_entropy, entropic_value, fock_entropy, LN_PI_E};
pub use reid::{conditional_variance_min, reid_value, HEISENBERG_BOUND};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Criterion {
    Reid,
    Entropic,
    Chsh,
}

impl Criterion {
    pub const ALL: [Criterion; 3] = [Criterion::Reid, Criterion::Entropic, Criterion::Chsh];

    /// Value above which the criterion reports a violation.
    pub fn bound(self) -> f64 {
        match self {
            Criterion::Reid | Criterion::Entropic => 0.0,
            Criterion::Chsh => 2.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Reid => "reid",
            Criterion::Entropic => "entropic",
            Criterion::Chsh => "chsh",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Criterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "reid" => Ok(Criterion::Reid),
            "entropic" | "ent" => Ok(Criterion::Entropic),
            "chsh" => Ok(Criterion::Chsh),
            other => Err(Error::InvalidArgument(format!("unknown criterion '{other}'"))),
        }
    }
}

/// A numeric result plus whether any adaptive integral missed its target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub criterion: Criterion,
    pub theta: Option<f64>,
    pub value: f64,
    pub components: BTreeMap<String, f64>,
    pub violated: bool,
    /// Set when a quadrature tolerance was not met.
    pub flagged: bool,
}

impl CriterionResult {
    fn new(criterion: Criterion, value: f64, components: BTreeMap<String, f64>, flagged: bool) -> Self {
        Self {
            criterion,
            theta: None,
            value,
            components,
            violated: value > criterion.bound(),
            flagged,
        }
    }

    pub fn with_theta(mut self, theta: f64) -> Self {
        self.theta = Some(theta);
        self
    }

    pub fn component(&self, name: &str) -> Option<f64> {
        self.components.get(name).copied()
    }
}

/// Evaluates one criterion.
pub fn evaluate(
    criterion: Criterion,
    state: &FockState,
    units: &UnitSystem,
    spec: &QuadratureSpec,
) -> Result<CriterionResult> {
    match criterion {
        Criterion::Reid => reid_value(state, units, spec),
        Criterion::Entropic => entropic_value(state, units, spec),
        Criterion::Chsh => Ok(chsh_max(state)),
    }
}
