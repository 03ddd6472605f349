//! Inference-variance product against the Heisenberg bound.

use std::collections::BTreeMap;

use super::{Criterion, CriterionResult, Estimate};
use crate::error::Result;
use crate::quad::{integrate_adaptive, integrate_moment_2d, GaussHermiteRule, QuadratureSpec, DENSITY_FLOOR};
use crate::state::FockState;
use crate::units::{Domain, UnitSystem};

/// ¼ with ħ = 1.
pub const HEISENBERG_BOUND: f64 = 0.25;

pub(crate) fn moment_rule(state: &FockState, spec: &QuadratureSpec) -> Result<GaussHermiteRule> {
    GaussHermiteRule::new(spec.gh_order.max(state.max_n() + 2))
}

/// Minimal average conditional variance of mode two given mode one,
/// `∬ P(a,b) (b - μ(a))² = E[b²] - ∫ P(a) μ(a)² da` with `μ` the
/// conditional mean.
///
/// `E[b²]` and the inner moments are Gauss–Hermite sums (exact for Fock
/// superpositions); the outer `∫ P μ²` has a rational integrand and goes
/// through the adaptive integrator.
pub fn conditional_variance_min(
    state: &FockState,
    dom: Domain,
    units: &UnitSystem,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    spec.validate()?;
    let kappa = units.kappa(dom);
    if let Some((_, n2)) = state.as_fock_product() {
        return Ok(Estimate {
            value: (n2 as f64 + 0.5) / kappa,
            flagged: false,
        });
    }
    let rule = moment_rule(state, spec)?;
    let second = integrate_moment_2d(|a, b| b * b * state.joint_density(a, b, dom, units), &rule, kappa);
    let extent = spec.half_width * units.length(dom);
    let explained = integrate_adaptive(
        |a| {
            let s = state.section(a, dom, units);
            let w = s.weight();
            if w <= DENSITY_FLOOR {
                return 0.0;
            }
            let m = s.first_moment(&rule);
            m * m / w
        },
        -extent,
        extent,
        &[0.0],
        spec.panel_tol,
        spec.max_depth,
    );
    Ok(Estimate {
        value: (second - explained.value).max(0.0),
        flagged: explained.flagged,
    })
}

/// `¼ - Δ²min(X₂) Δ²min(P₂)`.
pub fn reid_value(state: &FockState, units: &UnitSystem, spec: &QuadratureSpec) -> Result<CriterionResult> {
    let vx = conditional_variance_min(state, Domain::Position, units, spec)?;
    let vp = conditional_variance_min(state, Domain::Momentum, units, spec)?;
    let value = match state.as_fock_product() {
        // exact for product states, independent of rounding in m·ω
        Some((_, n2)) => HEISENBERG_BOUND - (n2 as f64 + 0.5).powi(2),
        None => HEISENBERG_BOUND - vx.value * vp.value,
    };
    let mut components = BTreeMap::new();
    components.insert("var_x2_min".to_string(), vx.value);
    components.insert("var_p2_min".to_string(), vp.value);
    Ok(CriterionResult::new(
        Criterion::Reid,
        value,
        components,
        vx.flagged || vp.flagged,
    ))
}
