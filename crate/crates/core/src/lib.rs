//! Einstein–Podolsky–Rosen steering criteria and maximal CHSH values for
//! two-mode continuous-variable wavefunctions built from harmonic-oscillator
//! Fock states.
//!
//! Natural units are used throughout: ħ = 1 and, by default, m·ω = 1.

// `!(a < b)` checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod criteria;
pub mod error;
pub mod hermite;
pub mod quad;
pub mod state;
pub mod sweep;
pub mod units;

pub use criteria::{
    chsh_max, conditional_entropy, conditional_variance_min, correlation_matrix, entropic_value, evaluate, reid_value,
    CorrelationMatrix, Criterion, CriterionResult, Estimate,
};
pub use error::{Error, Result};
pub use hermite::{hermite, HermiteEval};
pub use quad::QuadratureSpec;
pub use state::{eigenfunction_p, eigenfunction_x, make_psi, make_psi_prime, DensityGrid, FockState, FockTerm};
pub use sweep::{
    evaluate_at, find_critical_angles, hierarchy_report, sweep, sweep_range, CriticalAngle, HierarchyReport, Interval,
    IntervalSet, RootKind, StateId, SweepResult,
};
pub use units::{Domain, UnitSystem};
