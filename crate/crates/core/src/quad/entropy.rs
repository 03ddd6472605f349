//! Differential entropy integrals `-∫ g ln g` over truncated boxes.

use super::adaptive::{integrate_adaptive, Integral};
use super::spec::QuadratureSpec;

/// Densities below this floor contribute `0·ln 0 = 0`.
pub const DENSITY_FLOOR: f64 = 1e-300;

/// `-g ln g`, exactly zero below [`DENSITY_FLOOR`].
#[inline]
pub fn neg_xlogx(g: f64) -> f64 {
    if g < DENSITY_FLOOR {
        0.0
    } else {
        -g * g.ln()
    }
}

/// `-∫ g ln g` over `[-L, L]` with `L = spec.half_width`.
pub fn integrate_entropy_1d<G: Fn(f64) -> f64>(g: G, spec: &QuadratureSpec) -> Integral {
    let l = spec.half_width;
    integrate_entropy_1d_on(g, -l, l, &[], spec)
}

/// `-∫_lo^hi g ln g`, with known zeros of `g` passed as panel breakpoints.
pub fn integrate_entropy_1d_on<G: Fn(f64) -> f64>(
    g: G,
    lo: f64,
    hi: f64,
    breakpoints: &[f64],
    spec: &QuadratureSpec,
) -> Integral {
    integrate_adaptive(|x| neg_xlogx(g(x)), lo, hi, breakpoints, spec.panel_tol, spec.max_depth)
}

/// One line of a planar density at fixed outer coordinate: the inner
/// density and the inner positions where it vanishes.
pub struct Section<S> {
    pub density: S,
    pub breakpoints: Vec<f64>,
}

/// `-∬ g ln g` over `[-L, L]²` for a plain planar density.
pub fn integrate_entropy_2d<G: Fn(f64, f64) -> f64>(g: G, spec: &QuadratureSpec) -> Integral {
    let l = spec.half_width;
    let g = &g;
    integrate_entropy_2d_sections(
        (-l, l),
        &[],
        (-l, l),
        |a| Section {
            density: move |b| g(a, b),
            breakpoints: Vec::new(),
        },
        spec,
    )
}

/// Iterated `-∬ g ln g`: an adaptive outer integral over sections, each
/// integrated adaptively along the inner axis. Inner tolerances are scaled
/// so their accumulated error stays a tenth of `spec.panel_tol`.
pub fn integrate_entropy_2d_sections<F, S>(
    outer: (f64, f64),
    outer_breakpoints: &[f64],
    inner: (f64, f64),
    section: F,
    spec: &QuadratureSpec,
) -> Integral
where
    F: Fn(f64) -> Section<S>,
    S: Fn(f64) -> f64,
{
    let inner_tol = 0.1 * spec.panel_tol / (outer.1 - outer.0).max(1.0);
    let mut inner_flagged = false;
    let mut inner_evals = 0;
    let r = integrate_adaptive(
        |a| {
            let s = section(a);
            let line = integrate_adaptive(
                |b| neg_xlogx((s.density)(b)),
                inner.0,
                inner.1,
                &s.breakpoints,
                inner_tol,
                spec.max_depth,
            );
            inner_flagged |= line.flagged;
            inner_evals += line.evaluations;
            line.value
        },
        outer.0,
        outer.1,
        outer_breakpoints,
        spec.panel_tol,
        spec.max_depth,
    );
    Integral {
        value: r.value,
        error: r.error,
        flagged: r.flagged || inner_flagged,
        evaluations: inner_evals,
    }
}
