use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Precision budget shared by every integral in a criterion evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Gauss–Hermite order used for moment integrals.
    pub gh_order: usize,
    /// Truncation half-width in units of the oscillator length.
    pub half_width: f64,
    /// Absolute error target for each adaptive integral.
    pub panel_tol: f64,
    /// Maximum bisection depth of an adaptive panel.
    pub max_depth: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            gh_order: 64,
            half_width: 8.0,
            panel_tol: 1e-10,
            max_depth: 40,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.gh_order < 2 {
            return Err(Error::InvalidSpec(format!(
                "gh_order must be >= 2, got {}",
                self.gh_order
            )));
        }
        if !(self.half_width.is_finite() && self.half_width > 0.0) {
            return Err(Error::InvalidSpec(format!(
                "half_width must be > 0, got {}",
                self.half_width
            )));
        }
        if !(self.panel_tol > 0.0 && self.panel_tol < 1.0) {
            return Err(Error::InvalidSpec(format!(
                "panel_tol must lie in (0, 1), got {}",
                self.panel_tol
            )));
        }
        if self.max_depth < 1 {
            return Err(Error::InvalidSpec("max_depth must be >= 1".into()));
        }
        Ok(())
    }
}
