//! Sign-change bracketing, bisection and touch-point refinement on a
//! scalar function of θ.

use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootKind {
    /// The function changes sign.
    Crossing,
    /// The function reaches zero without changing sign.
    Touch,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub angle: f64,
    pub bracket: (f64, f64),
    pub residual: f64,
    pub kind: RootKind,
}

// |f| below this at a refined local minimum counts as touching zero
const TOUCH_TOL: f64 = 1e-9;
// only minima of |f| this close to zero on the grid get refined
const TOUCH_CANDIDATE: f64 = 1e-2;

pub(crate) fn bisect<F>(f: &F, mut lo: f64, mut hi: f64, mut f_lo: f64, tol: f64) -> Result<Root>
where
    F: Fn(f64) -> Result<f64>,
{
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(Root {
                angle: mid,
                bracket: (mid, mid),
                residual: 0.0,
                kind: RootKind::Crossing,
            });
        }
        if (fm > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    let angle = 0.5 * (lo + hi);
    Ok(Root {
        angle,
        bracket: (lo, hi),
        residual: f(angle)?.abs(),
        kind: RootKind::Crossing,
    })
}

fn golden_min_abs<F>(f: &F, mut lo: f64, mut hi: f64, tol: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let mut f1 = f(x1)?.abs();
    let mut f2 = f(x2)?.abs();
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1)?.abs();
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2)?.abs();
        }
    }
    Ok(if f1 <= f2 { (x1, f1) } else { (x2, f2) })
}

/// Locates every zero of `f` given its samples `values` on the ascending
/// `grid`. Sign changes are bisected to width `tol`; exact zeros on the grid
/// and refined near-zero minima of `|f|` without a sign change are reported
/// as touch points with a zero-width bracket.
pub(crate) fn locate<F>(f: &F, grid: &[f64], values: &[f64], tol: f64) -> Result<Vec<Root>>
where
    F: Fn(f64) -> Result<f64>,
{
    let n = grid.len();
    let mut roots = Vec::new();
    for i in 0..n {
        let v = values[i];
        let prev = (i > 0).then(|| values[i - 1]);
        let next = (i + 1 < n).then(|| values[i + 1]);
        if v == 0.0 {
            let crossing = matches!((prev, next), (Some(p), Some(q)) if p * q < 0.0);
            let kind = if crossing { RootKind::Crossing } else { RootKind::Touch };
            roots.push(Root {
                angle: grid[i],
                bracket: (grid[i], grid[i]),
                residual: 0.0,
                kind,
            });
            continue;
        }
        if let Some(q) = next {
            if v * q < 0.0 {
                roots.push(bisect(f, grid[i], grid[i + 1], v, tol)?);
                continue;
            }
        }
        if let (Some(p), Some(q)) = (prev, next) {
            let local_min = v.abs() < p.abs() && v.abs() < q.abs();
            let same_sign = p * v > 0.0 && v * q > 0.0;
            if local_min && same_sign && v.abs() <= TOUCH_CANDIDATE {
                let (x, fx) = golden_min_abs(f, grid[i - 1], grid[i + 1], tol)?;
                if fx <= TOUCH_TOL {
                    roots.push(Root {
                        angle: x,
                        bracket: (x, x),
                        residual: fx,
                        kind: RootKind::Touch,
                    });
                }
            }
        }
    }
    roots.sort_by(|a, b| a.angle.total_cmp(&b.angle));
    Ok(roots)
}
