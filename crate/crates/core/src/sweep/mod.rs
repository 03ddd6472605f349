//! θ sweeps over the two entangled families, critical-angle location and
//! the Bell/steering hierarchy report.

mod intervals;
mod roots;

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::criteria::{evaluate, Criterion, CriterionResult};
use crate::error::{Error, Result};
use crate::quad::QuadratureSpec;
use crate::state::{make_psi, make_psi_prime, FockState};
use crate::units::UnitSystem;

pub use intervals::{Interval, IntervalSet};
pub use roots::RootKind;

/// Step of the bracketing scan in [`find_critical_angles`].
pub const SCAN_STEP: f64 = 0.01;
pub const DEFAULT_ROOT_TOL: f64 = 1e-6;

/// The two state families `cos θ |00⟩ + sin θ |11⟩` and
/// `cos θ |01⟩ + sin θ |10⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StateId {
    #[serde(rename = "psi")]
    Psi,
    #[serde(rename = "psi-prime")]
    PsiPrime,
}

impl StateId {
    pub fn make(self, theta: f64) -> Result<FockState> {
        match self {
            StateId::Psi => make_psi(theta),
            StateId::PsiPrime => make_psi_prime(theta),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StateId::Psi => "psi",
            StateId::PsiPrime => "psi-prime",
        }
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StateId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "psi" => Ok(StateId::Psi),
            "psi-prime" | "psi_prime" | "psiprime" => Ok(StateId::PsiPrime),
            other => Err(Error::InvalidArgument(format!("unknown state '{other}'"))),
        }
    }
}

/// Evaluates `criterion` for `state_id` at `theta`.
pub fn evaluate_at(
    state_id: StateId,
    criterion: Criterion,
    theta: f64,
    units: &UnitSystem,
    spec: &QuadratureSpec,
) -> Result<CriterionResult> {
    let state = state_id.make(theta)?;
    Ok(evaluate(criterion, &state, units, spec)?.with_theta(theta))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalAngle {
    pub criterion: Criterion,
    pub angle: f64,
    pub bracket: (f64, f64),
    pub residual: f64,
    pub kind: RootKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub state_id: StateId,
    pub thetas: Vec<f64>,
    pub values: BTreeMap<Criterion, Vec<f64>>,
    /// Grid points whose quadrature missed its tolerance.
    pub flagged: Vec<(Criterion, f64)>,
    pub criticals: Vec<CriticalAngle>,
}

impl SweepResult {
    pub fn values_of(&self, criterion: Criterion) -> Option<&[f64]> {
        self.values.get(&criterion).map(Vec::as_slice)
    }
}

/// `n` evenly spaced angles from `lo` to `hi`, both included exactly.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "a sweep needs at least 2 points, got {n}"
        )));
    }
    if !(lo < hi) {
        return Err(Error::InvalidArgument(format!("empty theta range [{lo}, {hi}]")));
    }
    let step = (hi - lo) / (n - 1) as f64;
    let mut grid: Vec<f64> = (0..n).map(|i| lo + step * i as f64).collect();
    grid[n - 1] = hi;
    Ok(grid)
}

fn map_grid<T, F>(grid: &[f64], f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(f64) -> Result<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        grid.par_iter().map(|&t| f(t)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        grid.iter().map(|&t| f(t)).collect()
    }
}

/// Sweeps `criteria` over `n_points` angles spanning `[0, π]`.
pub fn sweep(
    state_id: StateId,
    criteria: &[Criterion],
    n_points: usize,
    units: &UnitSystem,
    spec: &QuadratureSpec,
) -> Result<SweepResult> {
    sweep_range(state_id, criteria, 0.0, PI, n_points, units, spec)
}

pub fn sweep_range(
    state_id: StateId,
    criteria: &[Criterion],
    theta_min: f64,
    theta_max: f64,
    n_points: usize,
    units: &UnitSystem,
    spec: &QuadratureSpec,
) -> Result<SweepResult> {
    spec.validate()?;
    if criteria.is_empty() {
        return Err(Error::InvalidArgument("no criteria requested".into()));
    }
    let mut requested = criteria.to_vec();
    requested.sort();
    requested.dedup();
    let thetas = uniform_grid(theta_min, theta_max, n_points)?;
    let rows = map_grid(&thetas, |theta| {
        requested
            .iter()
            .map(|&c| evaluate_at(state_id, c, theta, units, spec))
            .collect::<Result<Vec<_>>>()
    })?;
    let mut values: BTreeMap<Criterion, Vec<f64>> = BTreeMap::new();
    let mut flagged = Vec::new();
    for (theta, row) in thetas.iter().zip(rows) {
        for r in row {
            if r.flagged {
                flagged.push((r.criterion, *theta));
            }
            values.entry(r.criterion).or_default().push(r.value);
        }
    }
    Ok(SweepResult {
        state_id,
        thetas,
        values,
        flagged,
        criticals: Vec::new(),
    })
}

impl SweepResult {
    /// Bisects every sign change of `value - bound` between grid points and
    /// records touch points, filling `criticals`.
    pub fn locate_criticals(&mut self, units: &UnitSystem, spec: &QuadratureSpec, root_tol: f64) -> Result<()> {
        let mut criticals = Vec::new();
        for (&criterion, vals) in &self.values {
            let shifted: Vec<f64> = vals.iter().map(|v| v - criterion.bound()).collect();
            let f = offset_fn(self.state_id, criterion, units, spec);
            for r in roots::locate(&f, &self.thetas, &shifted, root_tol)? {
                criticals.push(CriticalAngle {
                    criterion,
                    angle: r.angle,
                    bracket: r.bracket,
                    residual: r.residual,
                    kind: r.kind,
                });
            }
        }
        criticals.sort_by(|a, b| a.angle.total_cmp(&b.angle).then(a.criterion.cmp(&b.criterion)));
        self.criticals = criticals;
        Ok(())
    }
}

fn offset_fn<'a>(
    state_id: StateId,
    criterion: Criterion,
    units: &'a UnitSystem,
    spec: &'a QuadratureSpec,
) -> impl Fn(f64) -> Result<f64> + Sync + Send + 'a {
    move |theta| Ok(evaluate_at(state_id, criterion, theta, units, spec)?.value - criterion.bound())
}

/// The scan grid: multiples of [`SCAN_STEP`] plus the product points π/2
/// and π.
pub fn scan_grid() -> Vec<f64> {
    let mut g: Vec<f64> = (0..).map(|k| k as f64 * SCAN_STEP).take_while(|&t| t < PI).collect();
    g.push(FRAC_PI_2);
    g.push(PI);
    g.sort_by(f64::total_cmp);
    g.dedup();
    g
}

fn all_roots(
    state_id: StateId,
    criterion: Criterion,
    grid: &[f64],
    units: &UnitSystem,
    spec: &QuadratureSpec,
    root_tol: f64,
) -> Result<Vec<CriticalAngle>> {
    spec.validate()?;
    if !(root_tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "root_tol must be positive, got {root_tol}"
        )));
    }
    let f = offset_fn(state_id, criterion, units, spec);
    let values = map_grid(grid, &f)?;
    Ok(roots::locate(&f, grid, &values, root_tol)?
        .into_iter()
        .map(|r| CriticalAngle {
            criterion,
            angle: r.angle,
            bracket: r.bracket,
            residual: r.residual,
            kind: r.kind,
        })
        .collect())
}

/// Critical angles of `criterion` on `[0, π]`: sign changes of
/// `value - bound` bisected to `root_tol`, plus touch points where the
/// bound is reached without a sign change. Fails with `NoRootInRange` when
/// there is no sign change at all.
pub fn find_critical_angles(
    state_id: StateId,
    criterion: Criterion,
    units: &UnitSystem,
    spec: &QuadratureSpec,
    root_tol: f64,
) -> Result<Vec<CriticalAngle>> {
    let roots = all_roots(state_id, criterion, &scan_grid(), units, spec, root_tol)?;
    if !roots.iter().any(|r| r.kind == RootKind::Crossing) {
        return Err(Error::NoRootInRange {
            criterion: criterion.to_string(),
        });
    }
    Ok(roots)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HierarchyReport {
    pub state_id: StateId,
    pub chsh_violation_region: IntervalSet,
    pub reid_detected: IntervalSet,
    pub entropic_detected: IntervalSet,
    /// Bell-nonlocal angles where neither steering criterion fires.
    pub undetected_steering: IntervalSet,
    pub criteria_incomplete: bool,
    pub critical_angles: Vec<CriticalAngle>,
}

/// Classifies `(0, π)` into the regions where each criterion is violated.
///
/// Roots of all three criteria are located from a `steps`-point sweep;
/// between consecutive roots every criterion has a fixed sign, read off at
/// the cell midpoint.
pub fn hierarchy_report(
    state_id: StateId,
    units: &UnitSystem,
    spec: &QuadratureSpec,
    steps: usize,
    root_tol: f64,
) -> Result<HierarchyReport> {
    let mut grid = uniform_grid(0.0, PI, steps)?;
    grid.push(FRAC_PI_2);
    grid.sort_by(f64::total_cmp);
    grid.dedup();

    let mut critical_angles = Vec::new();
    for c in Criterion::ALL {
        critical_angles.extend(all_roots(state_id, c, &grid, units, spec, root_tol)?);
    }
    critical_angles.sort_by(|a, b| a.angle.total_cmp(&b.angle).then(a.criterion.cmp(&b.criterion)));

    let mut edges: Vec<f64> = vec![0.0, PI];
    edges.extend(critical_angles.iter().map(|r| r.angle).filter(|&a| a > 0.0 && a < PI));
    edges.sort_by(f64::total_cmp);
    edges.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);

    // status[k][c]: criterion c violated on cell (edges[k], edges[k+1])
    let cells: Vec<(f64, f64)> = edges.windows(2).map(|w| (w[0], w[1])).collect();
    let status = map_grid(&cells.iter().map(|c| 0.5 * (c.0 + c.1)).collect::<Vec<_>>(), |mid| {
        let state = state_id.make(mid)?;
        Criterion::ALL
            .iter()
            .map(|&c| Ok(evaluate(c, &state, units, spec)?.violated))
            .collect::<Result<Vec<bool>>>()
    })?;

    let is_root_of = |edge: f64, c: Criterion| {
        critical_angles
            .iter()
            .any(|r| r.criterion == c && (r.angle - edge).abs() <= 1e-12)
    };
    let build = |member: &dyn Fn(&[bool]) -> bool| {
        let mut out: Vec<Interval> = Vec::new();
        let mut open: Option<f64> = None;
        for (k, &(lo, hi)) in cells.iter().enumerate() {
            if !member(&status[k]) {
                if let Some(start) = open.take() {
                    out.push(Interval::new(start, lo));
                }
                continue;
            }
            if open.is_none() {
                open = Some(lo);
            }
            // continue through the right edge only if the edge itself belongs
            let joins = k + 1 < cells.len() && member(&status[k + 1]) && {
                let at_edge: Vec<bool> = Criterion::ALL
                    .iter()
                    .enumerate()
                    .map(|(ci, &c)| status[k][ci] && !is_root_of(hi, c))
                    .collect();
                member(&at_edge)
            };
            if !joins {
                out.push(Interval::new(open.take().unwrap(), hi));
            }
        }
        IntervalSet::from_disjoint(out)
    };

    let idx = |c: Criterion| Criterion::ALL.iter().position(|&x| x == c).unwrap();
    let (ri, ei, ci) = (idx(Criterion::Reid), idx(Criterion::Entropic), idx(Criterion::Chsh));
    let chsh_violation_region = build(&|s| s[ci]);
    let reid_detected = build(&|s| s[ri]);
    let entropic_detected = build(&|s| s[ei]);
    let undetected_steering = build(&|s| s[ci] && !s[ri] && !s[ei]);
    let criteria_incomplete = !undetected_steering.is_empty();
    Ok(HierarchyReport {
        state_id,
        chsh_violation_region,
        reid_detected,
        entropic_detected,
        undetected_steering,
        criteria_incomplete,
        critical_angles,
    })
}
