//! Browser bindings for the interactive demo page.
//!
//! Every exported function has a plain Rust counterpart returning
//! `cvsteer::Result<Vec<f64>>` so the numerics are testable natively.
//! Wrappers flatten results into `Float64Array`s and turn errors into
//! JavaScript exceptions.

use std::f64::consts::PI;

use cvsteer::sweep::uniform_grid;
use cvsteer::{evaluate_at, Criterion, DensityGrid, Domain, Error, QuadratureSpec, StateId, UnitSystem};
use wasm_bindgen::prelude::*;

/// Looser quadrature for whole-curve redraws; still well below plot resolution.
pub fn preview_spec() -> QuadratureSpec {
    QuadratureSpec {
        gh_order: 32,
        panel_tol: 1e-7,
        ..QuadratureSpec::default()
    }
}

const MAX_STEPS: usize = 721;
const MAX_GRID: usize = 256;

fn parse_state(state: &str) -> cvsteer::Result<StateId> {
    state.parse()
}

fn parse_domain(domain: &str) -> cvsteer::Result<Domain> {
    match domain {
        "position" | "x" => Ok(Domain::Position),
        "momentum" | "p" => Ok(Domain::Momentum),
        other => Err(Error::InvalidArgument(format!("unknown domain '{other}'"))),
    }
}

/// Rows of `[theta, reid, entropic, chsh]` over `steps` angles in `[0, π]`.
pub fn curves_rows(state: &str, steps: usize) -> cvsteer::Result<Vec<f64>> {
    let id = parse_state(state)?;
    if steps > MAX_STEPS {
        return Err(Error::InvalidArgument(format!("at most {MAX_STEPS} steps")));
    }
    let units = UnitSystem::default();
    let spec = preview_spec();
    let mut out = Vec::with_capacity(4 * steps);
    for theta in uniform_grid(0.0, PI, steps)? {
        out.push(theta);
        for c in [Criterion::Reid, Criterion::Entropic, Criterion::Chsh] {
            out.push(evaluate_at(id, c, theta, &units, &spec)?.value);
        }
    }
    Ok(out)
}

/// `[reid, entropic, chsh]` at one angle, at full default precision.
pub fn evaluate_point(state: &str, theta: f64) -> cvsteer::Result<Vec<f64>> {
    let id = parse_state(state)?;
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::InvalidArgument(format!("theta {theta} outside [0, π]")));
    }
    let units = UnitSystem::default();
    let spec = QuadratureSpec::default();
    [Criterion::Reid, Criterion::Entropic, Criterion::Chsh]
        .into_iter()
        .map(|c| evaluate_at(id, c, theta, &units, &spec).map(|r| r.value))
        .collect()
}

/// Row-major `n × n` joint density on `[-half_width, half_width]²`.
pub fn density_values(state: &str, theta: f64, domain: &str, n: usize, half_width: f64) -> cvsteer::Result<Vec<f64>> {
    let id = parse_state(state)?;
    if n > MAX_GRID {
        return Err(Error::InvalidArgument(format!("at most {MAX_GRID} points per axis")));
    }
    if !(half_width > 0.0 && half_width.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "half_width must be positive, got {half_width}"
        )));
    }
    let grid = DensityGrid::sample(
        &id.make(theta)?,
        parse_domain(domain)?,
        &UnitSystem::default(),
        half_width,
        n,
    )?;
    Ok(grid.joint)
}

fn js(r: cvsteer::Result<Vec<f64>>) -> Result<Vec<f64>, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn curves(state: &str, steps: usize) -> Result<Vec<f64>, JsError> {
    js(curves_rows(state, steps))
}

#[wasm_bindgen]
pub fn evaluate(state: &str, theta: f64) -> Result<Vec<f64>, JsError> {
    js(evaluate_point(state, theta))
}

#[wasm_bindgen]
pub fn density(state: &str, theta: f64, domain: &str, n: usize, half_width: f64) -> Result<Vec<f64>, JsError> {
    js(density_values(state, theta, domain, n, half_width))
}
